//! The corpus document format: a UTF-8 JSON object per L-function.
//!
//! Parsing is eager: every structural invariant is checked up front and
//! violations are reported with field paths. Serialization is canonical —
//! keys in a fixed sorted order and floats printed with 17 significant
//! digits — so `parse ∘ serialize` is the identity and output is
//! byte-stable across runs. Two parse modes exist: [`parse_record`] treats
//! invariant violations as errors, [`parse_record_lenient`] downgrades a
//! documented subset to warnings so deliberately corrupted fixtures can
//! still reach the validator.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational};
use serde_json::Value;
use thiserror::Error;

use crate::character::DirichletCharacter;
use crate::model::{
    is_finite, AlgebraicCoefficientSet, LFunctionRecord, LocalFactor, PoleDeclaration,
    SpectralData,
};
use crate::primes::is_prime;
use crate::PARSE_TOL;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl ParseError {
    fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// Invariant violations that the lenient mode reports instead of rejecting.
/// `A1NotOne` is a warning in both modes.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseWarning {
    A1NotOne(Complex64),
    SignModulus(f64),
    ConstantTermNotOne { prime: u64 },
    ZeroDegree,
    CharacterModulus { modulus: u64, conductor: u64 },
    PoleOffCriticalLine { index: usize, re: f64 },
}

impl ParseWarning {
    /// Whether strict parsing treats this finding as an error.
    fn fatal_in_strict_mode(&self) -> bool {
        !matches!(self, ParseWarning::A1NotOne(_))
    }
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::A1NotOne(a) => write!(f, "coefficients[0]: a_1 = {a} instead of 1"),
            ParseWarning::SignModulus(m) => write!(f, "sign: sign modulus ≠ 1 (|ε| = {m})"),
            ParseWarning::ConstantTermNotOne { prime } => {
                write!(f, "euler_factors[p={prime}]: F_p(0) ≠ 1")
            }
            ParseWarning::ZeroDegree => write!(f, "mu/nu: degree d = d1 + 2·d2 must be positive"),
            ParseWarning::CharacterModulus { modulus, conductor } => write!(
                f,
                "character.modulus: {modulus} does not divide conductor {conductor}"
            ),
            ParseWarning::PoleOffCriticalLine { index, re } => write!(
                f,
                "poles[{index}]: location with Re = {re} > 0 must lie on the σ = 1 line"
            ),
        }
    }
}

/// Strict parse: all structural invariants enforced. Returns the record and
/// any non-fatal warnings (only the a_1 normalization notice).
pub fn parse_record(text: &str) -> Result<(LFunctionRecord, Vec<ParseWarning>), ParseError> {
    let (record, warnings) = parse_record_lenient(text)?;
    if let Some(w) = warnings.iter().find(|w| w.fatal_in_strict_mode()) {
        return Err(ParseError::at("record", w.to_string()));
    }
    Ok((record, warnings))
}

/// Lenient parse: syntax, schema and hard invariants (finiteness, positive
/// conductor, honest polynomial degrees, well-formed character tables) are
/// still errors, but sign modulus, F_p(0), pole locations, zero degree and
/// character-modulus divisibility come back as warnings.
pub fn parse_record_lenient(
    text: &str,
) -> Result<(LFunctionRecord, Vec<ParseWarning>), ParseError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
    let obj = as_object(&value, "record")?;
    check_keys(
        obj,
        "record",
        &[
            "algebraic_block",
            "character",
            "coefficients",
            "conductor",
            "euler_factors",
            "label",
            "mu",
            "nu",
            "poles",
            "sign",
        ],
    )?;

    let mut warnings = Vec::new();

    let label = as_str(require(obj, "record", "label")?, "label")?.to_owned();
    let conductor = as_positive_u64(require(obj, "record", "conductor")?, "conductor")?;
    let sign = as_complex(require(obj, "record", "sign")?, "sign")?;
    let sign_mod = sign.norm();
    if (sign_mod - 1.0).abs() > PARSE_TOL {
        warnings.push(ParseWarning::SignModulus(sign_mod));
    }

    let mu = as_complex_list(require(obj, "record", "mu")?, "mu")?;
    let nu = as_complex_list(require(obj, "record", "nu")?, "nu")?;
    if mu.len() + 2 * nu.len() == 0 {
        warnings.push(ParseWarning::ZeroDegree);
    }

    let character = parse_character(require(obj, "record", "character")?)?;
    if conductor % character.modulus() != 0 {
        warnings.push(ParseWarning::CharacterModulus {
            modulus: character.modulus(),
            conductor,
        });
    }

    let coefficients = as_complex_list(require(obj, "record", "coefficients")?, "coefficients")?;
    if coefficients.is_empty() {
        return Err(ParseError::at("coefficients", "at least a_1 is required"));
    }
    let a1 = coefficients[0];
    if (a1 - Complex64::new(1.0, 0.0)).norm() > PARSE_TOL {
        warnings.push(ParseWarning::A1NotOne(a1));
    }

    let euler_factors = parse_euler_factors(
        require(obj, "record", "euler_factors")?,
        &mut warnings,
    )?;
    let poles = parse_poles(require(obj, "record", "poles")?, &mut warnings)?;
    let algebraic_block = match obj.get("algebraic_block") {
        None => None,
        Some(v) => Some(parse_algebraic_block(v)?),
    };

    let record = LFunctionRecord {
        label,
        spectral: SpectralData {
            conductor,
            sign,
            mu,
            nu,
        },
        character,
        coefficients,
        euler_factors,
        poles,
        algebraic_block,
    };
    Ok((record, warnings))
}

fn parse_character(v: &Value) -> Result<DirichletCharacter, ParseError> {
    let obj = as_object(v, "character")?;
    check_keys(obj, "character", &["exponents", "modulus", "order"])?;
    let modulus = as_positive_u64(require(obj, "character", "modulus")?, "character.modulus")?;
    let order = as_positive_u64(require(obj, "character", "order")?, "character.order")?;
    let exp_obj = as_object(require(obj, "character", "exponents")?, "character.exponents")?;
    let mut exponents = BTreeMap::new();
    for (key, val) in exp_obj {
        let residue: u64 = key.parse().map_err(|_| {
            ParseError::at(
                format!("character.exponents[{key}]"),
                "key must be a residue in [0, modulus)",
            )
        })?;
        let e = as_nonneg_u64(val, &format!("character.exponents[{key}]"))?;
        exponents.insert(residue, e);
    }
    DirichletCharacter::new(modulus, order, exponents)
        .map_err(|e| ParseError::at("character", e.to_string()))
}

fn parse_euler_factors(
    v: &Value,
    warnings: &mut Vec<ParseWarning>,
) -> Result<Vec<LocalFactor>, ParseError> {
    let arr = as_array(v, "euler_factors")?;
    let mut factors: Vec<LocalFactor> = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let path = format!("euler_factors[{i}]");
        let obj = as_object(entry, &path)?;
        check_keys(obj, &path, &["coeffs", "p"])?;
        let p = as_positive_u64(require(obj, &path, "p")?, &format!("{path}.p"))?;
        if !is_prime(p) {
            return Err(ParseError::at(format!("{path}.p"), format!("{p} is not prime")));
        }
        if factors.iter().any(|f| f.prime == p) {
            return Err(ParseError::at(
                format!("{path}.p"),
                format!("duplicate factor for prime {p}"),
            ));
        }
        let coeffs = as_complex_list(require(obj, &path, "coeffs")?, &format!("{path}.coeffs"))?;
        if coeffs.is_empty() {
            return Err(ParseError::at(
                format!("{path}.coeffs"),
                "constant term c_0 is required",
            ));
        }
        if (coeffs[0] - Complex64::new(1.0, 0.0)).norm() > PARSE_TOL {
            warnings.push(ParseWarning::ConstantTermNotOne { prime: p });
        }
        if coeffs.len() > 1 && coeffs.last().unwrap().norm() == 0.0 {
            return Err(ParseError::at(
                format!("{path}.coeffs"),
                "trailing coefficient must be nonzero (degree is honest)",
            ));
        }
        factors.push(LocalFactor::new(p, coeffs));
    }
    Ok(factors)
}

fn parse_poles(
    v: &Value,
    warnings: &mut Vec<ParseWarning>,
) -> Result<Vec<PoleDeclaration>, ParseError> {
    let arr = as_array(v, "poles")?;
    let mut poles = Vec::with_capacity(arr.len());
    for (i, entry) in arr.iter().enumerate() {
        let path = format!("poles[{i}]");
        let obj = as_object(entry, &path)?;
        check_keys(obj, &path, &["residue", "s"])?;
        let location = as_complex(require(obj, &path, "s")?, &format!("{path}.s"))?;
        let residue = as_complex(require(obj, &path, "residue")?, &format!("{path}.residue"))?;
        // Locations with Re ≤ 0 are Γ-induced poles of Λ; the σ = 1
        // constraint applies only to the implied L-poles on the right.
        if location.re > PARSE_TOL && (location.re - 1.0).abs() > PARSE_TOL {
            warnings.push(ParseWarning::PoleOffCriticalLine {
                index: i,
                re: location.re,
            });
        }
        poles.push(PoleDeclaration { location, residue });
    }
    Ok(poles)
}

fn parse_algebraic_block(v: &Value) -> Result<AlgebraicCoefficientSet, ParseError> {
    let obj = as_object(v, "algebraic_block")?;
    check_keys(
        obj,
        "algebraic_block",
        &["basis_label", "coords", "declared_weight", "field_degree"],
    )?;
    let field_degree = as_positive_u64(
        require(obj, "algebraic_block", "field_degree")?,
        "algebraic_block.field_degree",
    )? as u32;
    let basis_label = as_str(
        require(obj, "algebraic_block", "basis_label")?,
        "algebraic_block.basis_label",
    )?
    .to_owned();
    let declared_weight = match require(obj, "algebraic_block", "declared_weight")? {
        Value::Number(n) if n.is_i64() => n.as_i64().unwrap(),
        _ => {
            return Err(ParseError::at(
                "algebraic_block.declared_weight",
                "expected an integer",
            ))
        }
    };
    let coords_arr = as_array(
        require(obj, "algebraic_block", "coords")?,
        "algebraic_block.coords",
    )?;
    if coords_arr.is_empty() {
        return Err(ParseError::at(
            "algebraic_block.coords",
            "at least the row for a_1 is required",
        ));
    }
    let mut coords = Vec::with_capacity(coords_arr.len());
    for (i, row) in coords_arr.iter().enumerate() {
        let path = format!("algebraic_block.coords[{i}]");
        let row_arr = as_array(row, &path)?;
        if row_arr.len() != field_degree as usize {
            return Err(ParseError::at(
                path,
                format!("expected {field_degree} coordinates"),
            ));
        }
        let mut vec_row = Vec::with_capacity(row_arr.len());
        for (j, q) in row_arr.iter().enumerate() {
            vec_row.push(as_rational(q, &format!("{path}[{j}]"))?);
        }
        coords.push(vec_row);
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let zero = BigRational::from_integer(BigInt::from(0));
    let first_ok = coords[0][0] == one && coords[0][1..].iter().all(|c| *c == zero);
    if !first_ok {
        return Err(ParseError::at(
            "algebraic_block.coords[0]",
            "coordinates for a_1 must represent 1",
        ));
    }
    Ok(AlgebraicCoefficientSet {
        field_degree,
        basis_label,
        declared_weight,
        coords,
    })
}

// ---------------------------------------------------------------------------
// Value helpers
// ---------------------------------------------------------------------------

fn as_object<'a>(
    v: &'a Value,
    path: &str,
) -> Result<&'a serde_json::Map<String, Value>, ParseError> {
    v.as_object()
        .ok_or_else(|| ParseError::at(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array()
        .ok_or_else(|| ParseError::at(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, ParseError> {
    v.as_str()
        .ok_or_else(|| ParseError::at(path, "expected a string"))
}

fn require<'a>(
    obj: &'a serde_json::Map<String, Value>,
    parent: &str,
    key: &str,
) -> Result<&'a Value, ParseError> {
    obj.get(key)
        .ok_or_else(|| ParseError::at(parent, format!("missing required field `{key}`")))
}

fn check_keys(
    obj: &serde_json::Map<String, Value>,
    path: &str,
    allowed: &[&str],
) -> Result<(), ParseError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError::at(path, format!("unknown field `{key}`")));
        }
    }
    Ok(())
}

fn as_f64(v: &Value, path: &str) -> Result<f64, ParseError> {
    let x = v
        .as_f64()
        .ok_or_else(|| ParseError::at(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(ParseError::at(path, "non-finite value"));
    }
    Ok(x)
}

fn as_positive_u64(v: &Value, path: &str) -> Result<u64, ParseError> {
    match v.as_u64() {
        Some(n) if n > 0 => Ok(n),
        _ => Err(ParseError::at(path, "expected a positive integer")),
    }
}

fn as_nonneg_u64(v: &Value, path: &str) -> Result<u64, ParseError> {
    v.as_u64()
        .ok_or_else(|| ParseError::at(path, "expected a non-negative integer"))
}

/// Complex numbers are two-element arrays [re, im].
fn as_complex(v: &Value, path: &str) -> Result<Complex64, ParseError> {
    let arr = as_array(v, path)?;
    if arr.len() != 2 {
        return Err(ParseError::at(path, "expected [re, im]"));
    }
    let z = Complex64::new(
        as_f64(&arr[0], &format!("{path}[0]"))?,
        as_f64(&arr[1], &format!("{path}[1]"))?,
    );
    debug_assert!(is_finite(z));
    Ok(z)
}

fn as_complex_list(v: &Value, path: &str) -> Result<Vec<Complex64>, ParseError> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, e)| as_complex(e, &format!("{path}[{i}]")))
        .collect()
}

/// Rationals are two-element integer arrays [numerator, denominator].
fn as_rational(v: &Value, path: &str) -> Result<BigRational, ParseError> {
    let arr = as_array(v, path)?;
    if arr.len() != 2 {
        return Err(ParseError::at(path, "expected [numerator, denominator]"));
    }
    let num = arr[0]
        .as_i64()
        .ok_or_else(|| ParseError::at(format!("{path}[0]"), "expected an integer"))?;
    let den = arr[1]
        .as_i64()
        .ok_or_else(|| ParseError::at(format!("{path}[1]"), "expected an integer"))?;
    if den == 0 {
        return Err(ParseError::at(path, "zero denominator"));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

/// 17 significant digits: enough to round-trip any f64 exactly.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn fmt_complex_list_inline(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|z| fmt_complex(*z)).collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_complex_list_block(v: &[Complex64], indent: &str) -> String {
    if v.is_empty() {
        return "[]".to_owned();
    }
    let inner: Vec<String> = v
        .iter()
        .map(|z| format!("{indent}  {}", fmt_complex(*z)))
        .collect();
    format!("[\n{}\n{indent}]", inner.join(",\n"))
}

fn fmt_rational(q: &BigRational) -> String {
    format!("[{}, {}]", q.numer(), q.denom())
}

/// Canonical corpus document for a record: fixed (sorted) key order and
/// 17-significant-digit floats, byte-identical across runs.
pub fn serialize_record(r: &LFunctionRecord) -> String {
    let mut fields: Vec<(&str, String)> = Vec::new();

    if let Some(b) = &r.algebraic_block {
        let rows: Vec<String> = b
            .coords
            .iter()
            .map(|row| {
                let entries: Vec<String> = row.iter().map(fmt_rational).collect();
                format!("      [{}]", entries.join(", "))
            })
            .collect();
        let block = format!(
            "{{\n    \"basis_label\": {},\n    \"coords\": [\n{}\n    ],\n    \"declared_weight\": {},\n    \"field_degree\": {}\n  }}",
            json_escape(&b.basis_label),
            rows.join(",\n"),
            b.declared_weight,
            b.field_degree
        );
        fields.push(("algebraic_block", block));
    }

    let exps: Vec<String> = r
        .character
        .exponents()
        .iter()
        .map(|(res, e)| format!("{}: {}", json_escape(&res.to_string()), e))
        .collect();
    fields.push((
        "character",
        format!(
            "{{\"exponents\": {{{}}}, \"modulus\": {}, \"order\": {}}}",
            exps.join(", "),
            r.character.modulus(),
            r.character.order()
        ),
    ));

    fields.push((
        "coefficients",
        fmt_complex_list_block(&r.coefficients, "  "),
    ));
    fields.push(("conductor", r.spectral.conductor.to_string()));

    let factors: Vec<String> = r
        .euler_factors
        .iter()
        .map(|f| {
            format!(
                "    {{\"coeffs\": {}, \"p\": {}}}",
                fmt_complex_list_inline(&f.coefficients),
                f.prime
            )
        })
        .collect();
    fields.push((
        "euler_factors",
        if factors.is_empty() {
            "[]".to_owned()
        } else {
            format!("[\n{}\n  ]", factors.join(",\n"))
        },
    ));

    fields.push(("label", json_escape(&r.label)));
    fields.push(("mu", fmt_complex_list_inline(&r.spectral.mu)));
    fields.push(("nu", fmt_complex_list_inline(&r.spectral.nu)));

    let poles: Vec<String> = r
        .poles
        .iter()
        .map(|p| {
            format!(
                "    {{\"residue\": {}, \"s\": {}}}",
                fmt_complex(p.residue),
                fmt_complex(p.location)
            )
        })
        .collect();
    fields.push((
        "poles",
        if poles.is_empty() {
            "[]".to_owned()
        } else {
            format!("[\n{}\n  ]", poles.join(",\n"))
        },
    ));
    fields.push(("sign", fmt_complex(r.spectral.sign)));

    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  {}: {v}", json_escape(k)))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn zeta_document_parses_with_degree_one() {
        let text = serialize_record(&corpus::zeta(20));
        let (record, warnings) = parse_record(&text).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(record.spectral.degree(), 1);
        assert_eq!(record.spectral.signature(), (1, 0));
        assert_eq!(record.euler_factors.len(), 8);
        assert_eq!(record.poles.len(), 2);
        assert_eq!(record, corpus::zeta(20));
    }

    #[test]
    fn bad_sign_modulus_is_a_strict_error() {
        let mut record = corpus::zeta(5);
        record.spectral.sign = Complex64::new(0.5, 0.0);
        let text = serialize_record(&record);
        let err = parse_record(&text).unwrap_err();
        assert!(err.to_string().contains("sign modulus ≠ 1"), "{err}");
        let (_, warnings) = parse_record_lenient(&text).unwrap();
        assert_eq!(warnings, vec![ParseWarning::SignModulus(0.5)]);
    }

    #[test]
    fn serialization_is_deterministic() {
        let record = corpus::delta(30);
        assert_eq!(serialize_record(&record), serialize_record(&record));
    }

    #[test]
    fn empty_nu_is_explicit() {
        let text = serialize_record(&corpus::zeta(5));
        assert!(text.contains("\"nu\": []"));
    }

    #[test]
    fn complex_encoding_is_a_two_element_array() {
        let mut record = corpus::zeta(5);
        record.spectral.mu = vec![Complex64::new(-0.2, 3.0)];
        let text = serialize_record(&record);
        assert!(text.contains("[-2.0000000000000001e-1, 3.0000000000000000e0]"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = serialize_record(&corpus::zeta(5)).replace("\"label\"", "\"lable\"");
        assert!(parse_record(&text).is_err());
    }

    #[test]
    fn nan_is_rejected_by_json_grammar() {
        let text = serialize_record(&corpus::zeta(5)).replace(
            "\"sign\": [1.0000000000000000e0, 0.0000000000000000e0]",
            "\"sign\": [NaN, 0.0]",
        );
        assert!(matches!(parse_record(&text), Err(ParseError::Syntax(_))));
    }

    #[test]
    fn a1_deviation_is_a_warning_not_an_error() {
        let mut record = corpus::zeta(5);
        record.coefficients[0] = Complex64::new(2.0, 0.0);
        let text = serialize_record(&record);
        let (_, warnings) = parse_record(&text).unwrap();
        assert_eq!(warnings.len(), 1);
        assert!(matches!(warnings[0], ParseWarning::A1NotOne(_)));
    }
}
