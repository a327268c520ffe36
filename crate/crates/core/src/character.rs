//! Exact Dirichlet characters mod N.
//!
//! A character is stored as an exponent table on the unit residues: for
//! gcd(r, N) = 1 we keep an integer e(r) with χ(r) = exp(2πi·e(r)/k), where
//! k is the order of the character. Storing exponents rather than float
//! values keeps parity and χ(p) exact for the central-character checks.

use std::collections::BTreeMap;

use num::complex::Complex64;
use thiserror::Error;

use crate::primes::{gcd, lcm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("order must be positive")]
    ZeroOrder,
    #[error("exponent table missing unit residue {0}")]
    MissingResidue(u64),
    #[error("exponent table lists non-unit residue {0}")]
    NonUnitResidue(u64),
    #[error("exponent {exponent} at residue {residue} not reduced mod order {order}")]
    UnreducedExponent {
        residue: u64,
        exponent: u64,
        order: u64,
    },
    #[error("e(1) = {0}, expected 0")]
    NonTrivialAtOne(u64),
    #[error("multiplicativity fails at {a}·{b} mod {modulus}")]
    NotMultiplicative { a: u64, b: u64, modulus: u64 },
    #[error("{divisor} does not divide {multiple}")]
    NotADivisor { divisor: u64, multiple: u64 },
}

/// The exact value of a character: zero or the root of unity e^{2πi·num/den}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterValue {
    Zero,
    /// Reduced fraction num/den in [0,1), den ≥ 1.
    Root { num: u64, den: u64 },
}

impl CharacterValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            CharacterValue::Zero => Complex64::new(0.0, 0.0),
            CharacterValue::Root { num, den } => {
                // Quarter turns are the values that downstream code compares
                // exactly; emit them without trig roundoff.
                if den == 1 {
                    return Complex64::new(1.0, 0.0);
                }
                if den == 2 {
                    return Complex64::new(-1.0, 0.0);
                }
                if den == 4 {
                    return if num == 1 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                let angle = 2.0 * std::f64::consts::PI * (num as f64) / (den as f64);
                Complex64::new(angle.cos(), angle.sin())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exponents: BTreeMap<u64, u64>,
}

impl DirichletCharacter {
    /// Build and fully validate a character from its exponent table.
    ///
    /// The table must contain exactly the unit residues in [0, N), with
    /// exponents reduced mod `order`, e(1) = 0, and complete
    /// multiplicativity on units. The stored order is normalized to the
    /// exact order of the character, so equal characters compare equal.
    pub fn new(
        modulus: u64,
        order: u64,
        exponents: BTreeMap<u64, u64>,
    ) -> Result<Self, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::ZeroModulus);
        }
        if order == 0 {
            return Err(CharacterError::ZeroOrder);
        }
        for r in 0..modulus {
            let unit = gcd(r, modulus) == 1;
            match (unit, exponents.contains_key(&r)) {
                (true, false) => return Err(CharacterError::MissingResidue(r)),
                (false, true) => return Err(CharacterError::NonUnitResidue(r)),
                _ => {}
            }
        }
        for (&r, &e) in &exponents {
            if e >= order {
                return Err(CharacterError::UnreducedExponent {
                    residue: r,
                    exponent: e,
                    order,
                });
            }
        }
        let one = 1 % modulus;
        let e1 = exponents[&one];
        if e1 != 0 {
            return Err(CharacterError::NonTrivialAtOne(e1));
        }
        let units: Vec<u64> = exponents.keys().copied().collect();
        for &a in &units {
            for &b in &units {
                let ab = (a as u128 * b as u128 % modulus as u128) as u64;
                if (exponents[&a] + exponents[&b]) % order != exponents[&ab] {
                    return Err(CharacterError::NotMultiplicative { a, b, modulus });
                }
            }
        }
        let mut chi = DirichletCharacter {
            modulus,
            order,
            exponents,
        };
        chi.normalize_order();
        Ok(chi)
    }

    /// The trivial (principal) character mod N.
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let exponents = (0..modulus)
            .filter(|&r| gcd(r, modulus) == 1)
            .map(|r| (r, 0))
            .collect();
        DirichletCharacter {
            modulus,
            order: 1,
            exponents,
        }
    }

    /// Reduce the stored order to the exact order of the character.
    fn normalize_order(&mut self) {
        let mut g = self.order;
        for &e in self.exponents.values() {
            g = gcd(g, e);
        }
        // g = gcd(order, all exponents); dividing through leaves values fixed.
        if g > 1 {
            self.order /= g;
            for e in self.exponents.values_mut() {
                *e /= g;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u64> {
        &self.exponents
    }

    /// χ(n) as an exact root of unity (or zero when gcd(n, N) > 1),
    /// periodic mod N and defined for negative arguments.
    pub fn eval_exact(&self, n: i64) -> CharacterValue {
        let m = self.modulus as i64;
        let r = n.rem_euclid(m) as u64;
        match self.exponents.get(&r) {
            None => CharacterValue::Zero,
            Some(&e) => {
                if e == 0 {
                    CharacterValue::Root { num: 0, den: 1 }
                } else {
                    let g = gcd(e, self.order);
                    CharacterValue::Root {
                        num: e / g,
                        den: self.order / g,
                    }
                }
            }
        }
    }

    /// χ(n) as a complex number; exact whenever the value is 0, ±1 or ±i.
    pub fn evaluate(&self, n: i64) -> Complex64 {
        self.eval_exact(n).to_complex()
    }

    /// χ(−1), exactly ±1.
    pub fn parity(&self) -> i64 {
        match self.eval_exact(-1) {
            CharacterValue::Root { num: 0, den: 1 } => 1,
            CharacterValue::Root { num: 1, den: 2 } => -1,
            v => unreachable!("χ(-1)² = 1 forces ±1, got {v:?}"),
        }
    }

    /// Induce to a larger modulus N (requires modulus | N): agrees with
    /// self on residues coprime to N, zero elsewhere.
    pub fn induce(&self, new_modulus: u64) -> Result<Self, CharacterError> {
        if new_modulus == 0 {
            return Err(CharacterError::ZeroModulus);
        }
        if new_modulus % self.modulus != 0 {
            return Err(CharacterError::NotADivisor {
                divisor: self.modulus,
                multiple: new_modulus,
            });
        }
        let exponents = (0..new_modulus)
            .filter(|&r| gcd(r, new_modulus) == 1)
            .map(|r| (r, self.exponents[&(r % self.modulus)]))
            .collect();
        let mut chi = DirichletCharacter {
            modulus: new_modulus,
            order: self.order,
            exponents,
        };
        chi.normalize_order();
        Ok(chi)
    }

    /// Pointwise product, defined mod lcm of the moduli. The order of the
    /// result divides lcm of the orders.
    pub fn multiply(&self, other: &DirichletCharacter) -> DirichletCharacter {
        let modulus = lcm(self.modulus, other.modulus);
        let order = lcm(self.order, other.order);
        let (sa, sb) = (order / self.order, order / other.order);
        let exponents = (0..modulus)
            .filter(|&r| gcd(r, modulus) == 1)
            .map(|r| {
                let ea = self.exponents[&(r % self.modulus)] * sa;
                let eb = other.exponents[&(r % other.modulus)] * sb;
                (r, (ea + eb) % order)
            })
            .collect();
        let mut chi = DirichletCharacter {
            modulus,
            order,
            exponents,
        };
        chi.normalize_order();
        chi
    }
}

/// The nontrivial character mod 4 (χ₄, odd quadratic).
pub fn chi4() -> DirichletCharacter {
    DirichletCharacter::new(4, 2, BTreeMap::from([(1, 0), (3, 1)])).unwrap()
}

/// The nontrivial character mod 3 (odd quadratic).
pub fn chi3() -> DirichletCharacter {
    DirichletCharacter::new(3, 2, BTreeMap::from([(1, 0), (2, 1)])).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::is_prime;

    /// χ₅ of order 4 with e(2) = 1: the group mod 5 is generated by 2.
    fn chi5() -> DirichletCharacter {
        // Brute-force the table from the generator: 2^1=2, 2^2=4, 2^3=3.
        DirichletCharacter::new(5, 4, BTreeMap::from([(1, 0), (2, 1), (3, 3), (4, 2)])).unwrap()
    }

    #[test]
    fn chi4_table_values() {
        let chi = chi4();
        assert_eq!(chi.evaluate(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.evaluate(2), Complex64::new(0.0, 0.0));
        assert_eq!(chi.evaluate(5), Complex64::new(1.0, 0.0));
        assert_eq!(chi.evaluate(-1), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn trivial_mod_1_is_one_everywhere() {
        let chi = DirichletCharacter::trivial(1);
        for n in -5..=5 {
            assert_eq!(chi.evaluate(n), Complex64::new(1.0, 0.0));
        }
        assert_eq!(chi.parity(), 1);
    }

    #[test]
    fn chi5_order_4_values() {
        let chi = chi5();
        assert_eq!(chi.evaluate(2), Complex64::new(0.0, 1.0));
        assert_eq!(chi.evaluate(4), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.evaluate(3), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn parity_values() {
        assert_eq!(DirichletCharacter::trivial(1).parity(), 1);
        assert_eq!(chi4().parity(), -1);
        // χ(-1) = χ(4) = i² = -1 by the evaluate table above.
        assert_eq!(chi5().parity(), -1);
    }

    #[test]
    fn induction() {
        let chi = chi4();
        let ind = chi.induce(12).unwrap();
        assert_eq!(ind.evaluate(5), Complex64::new(1.0, 0.0));
        assert_eq!(ind.evaluate(3), Complex64::new(0.0, 0.0));
        assert_eq!(chi.induce(4).unwrap(), chi);
        assert_eq!(
            chi.induce(6),
            Err(CharacterError::NotADivisor {
                divisor: 4,
                multiple: 6
            })
        );
    }

    #[test]
    fn induction_preserves_values_on_coprime_integers() {
        let chi = chi5();
        let ind = chi.induce(15).unwrap();
        for n in 1..60 {
            if gcd(n as u64, 15) == 1 {
                assert_eq!(ind.eval_exact(n), chi.eval_exact(n), "n = {n}");
            }
        }
    }

    #[test]
    fn multiplication() {
        let chi = chi4();
        let sq = chi.multiply(&chi);
        assert_eq!(sq.order(), 1);
        assert_eq!(sq.modulus(), 4);
        assert_eq!(sq.evaluate(3), Complex64::new(1.0, 0.0));

        let triv1 = DirichletCharacter::trivial(1);
        assert_eq!(chi.multiply(&triv1), chi);

        let prod = chi.multiply(&chi3());
        assert_eq!(prod.modulus(), 12);
        assert_eq!(prod.order(), 2);
        assert_eq!(prod.evaluate(5), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn parity_of_product_with_coprime_moduli() {
        let pairs = [
            (chi4(), chi3()),
            (chi4(), chi5()),
            (chi3(), chi5()),
            (DirichletCharacter::trivial(1), chi4()),
        ];
        for (a, b) in pairs {
            assert_eq!(a.multiply(&b).parity(), a.parity() * b.parity());
        }
    }

    /// Exhaustive multiplicativity over the full character group of every
    /// prime modulus up to 50, built from a primitive root.
    #[test]
    fn multiplicativity_exhaustive_prime_moduli() {
        for p in 2..=50u64 {
            if !is_prime(p) {
                continue;
            }
            let k = p - 1;
            let g = (2..p)
                .find(|&g| {
                    let mut x = 1u64;
                    (1..k).all(|_| {
                        x = x * g % p;
                        x != 1
                    })
                })
                .unwrap_or(1);
            for j in 0..k.min(6) {
                let mut table = BTreeMap::from([(1u64, 0u64)]);
                let mut x = 1u64;
                for a in 1..k {
                    x = x * g % p;
                    table.insert(x, (a * j) % k.max(1));
                }
                let chi = DirichletCharacter::new(p, k.max(1), table).unwrap();
                for m in 1..(2 * p) {
                    for n in 1..(2 * p) {
                        let lhs = chi.evaluate((m * n) as i64);
                        let rhs = chi.evaluate(m as i64) * chi.evaluate(n as i64);
                        assert!((lhs - rhs).norm() < 1e-12, "p={p} j={j} m={m} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(
            DirichletCharacter::new(4, 2, BTreeMap::from([(1, 0)])),
            Err(CharacterError::MissingResidue(3))
        );
        assert_eq!(
            DirichletCharacter::new(4, 2, BTreeMap::from([(1, 0), (2, 1), (3, 1)])),
            Err(CharacterError::NonUnitResidue(2))
        );
        assert!(matches!(
            DirichletCharacter::new(5, 4, BTreeMap::from([(1, 0), (2, 1), (3, 1), (4, 2)])),
            Err(CharacterError::NotMultiplicative { .. })
        ));
    }
}
