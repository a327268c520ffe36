//! Analytic L-function toolkit: data model, axiomatic validators, and a
//! numerical functional-equation engine.
//!
//! The crate is organized around [`LFunctionRecord`], a bundle of Dirichlet
//! coefficients, Euler factors, functional-equation data and a central
//! character. Everything else consumes that record:
//!
//! * [`character`] — exact Dirichlet characters stored as exponent tables;
//! * [`euler`] — local-factor algebra (Satake parameters, Dirichlet-series
//!   expansion, Ramanujan checks, unitary pairing at a prime);
//! * [`spectral`] — classification from the Γ-factor data (Selberg bound,
//!   balancedness, parity, algebraic type, unitary pairing at infinity,
//!   Hodge-number Γ-factor construction);
//! * [`arithmetic`] — arithmetic-type detection from exact coefficients;
//! * [`axioms`] — the orchestrated per-record validation report;
//! * [`numeric`] — complex Gamma, inverse Mellin quadrature, smoothed sums
//!   and the functional-equation residual test;
//! * [`products`] — products, imaginary shifts and balanced-product checks;
//! * [`corpus`] — reference records built from classical formulas.

pub mod arithmetic;
pub mod axioms;
pub mod character;
pub mod corpus;
pub mod euler;
pub mod format;
pub mod model;
pub mod numeric;
pub mod pairing;
pub mod primes;
pub mod products;
pub mod spectral;

pub use model::{
    AlgebraicCoefficientSet, LFunctionRecord, LocalFactor, PoleDeclaration, SpectralData,
};
pub use num::complex::Complex64;

/// Absolute tolerance for structural float comparisons made at parse time.
/// Corpus data is stored at double precision; 1e-12 leaves headroom over
/// round-trip noise without accepting genuinely wrong values.
pub const PARSE_TOL: f64 = 1e-12;

/// Default absolute tolerance for structural checks (Selberg membership,
/// Satake moduli, pairing residual matching).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default partial Ramanujan bound θ for the unitary pairing conditions.
/// Any θ < 1/2 is admissible; θ < 1/4 makes the candidate decomposition
/// unique, larger values exercise the backtracking search.
pub const DEFAULT_THETA: f64 = 0.25;

/// Default pass threshold for the numerical functional-equation residual.
pub const DEFAULT_FE_TOL: f64 = 1e-8;
