//! Shared data types: the L-function record and its components.
//!
//! Values of these types are immutable after construction and safe to share
//! across threads; every operation elsewhere in the crate borrows them.

use num::complex::Complex64;
use num::BigRational;

use crate::character::DirichletCharacter;
use crate::primes::gcd;

/// Functional-equation data: conductor N, sign ε and the spectral parameter
/// multisets {μ_j} (Γ_R shifts) and {ν_k} (Γ_C shifts).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub conductor: u64,
    pub sign: Complex64,
    pub mu: Vec<Complex64>,
    pub nu: Vec<Complex64>,
}

impl SpectralData {
    pub fn d1(&self) -> usize {
        self.mu.len()
    }

    pub fn d2(&self) -> usize {
        self.nu.len()
    }

    /// Degree d = d₁ + 2d₂.
    pub fn degree(&self) -> usize {
        self.mu.len() + 2 * self.nu.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.d1(), self.d2())
    }

    /// Data of the Schwartz-reflected completed function: conjugated
    /// parameter multisets (the conductor is unchanged).
    pub fn conjugated(&self) -> SpectralData {
        SpectralData {
            conductor: self.conductor,
            sign: self.sign.conj(),
            mu: self.mu.iter().map(|z| z.conj()).collect(),
            nu: self.nu.iter().map(|z| z.conj()).collect(),
        }
    }
}

/// One local Euler factor: F_p(z) = Σ coefficients[i]·z^i with F_p(0) = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFactor {
    pub prime: u64,
    pub coefficients: Vec<Complex64>,
}

impl LocalFactor {
    pub fn new(prime: u64, coefficients: Vec<Complex64>) -> Self {
        LocalFactor {
            prime,
            coefficients,
        }
    }

    /// Degree d_p of the polynomial (coefficient list length minus one;
    /// parsing guarantees an honest trailing coefficient).
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// A declared pole of the completed function Λ, as (location, residue).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleDeclaration {
    pub location: Complex64,
    pub residue: Complex64,
}

/// Exact coefficient data over a declared number field F of degree m:
/// a_n = (Σ_i coords[n-1][i]·b_i) / n^{declared_weight/2} for a fixed
/// integral basis {b_i} of O_F named by `basis_label`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicCoefficientSet {
    pub field_degree: u32,
    pub basis_label: String,
    pub declared_weight: i64,
    pub coords: Vec<Vec<BigRational>>,
}

/// The full data bundle for one L-function.
#[derive(Debug, Clone, PartialEq)]
pub struct LFunctionRecord {
    pub label: String,
    pub spectral: SpectralData,
    pub character: DirichletCharacter,
    /// Dirichlet coefficients a_1, a_2, … (index 0 holds a_1).
    pub coefficients: Vec<Complex64>,
    pub euler_factors: Vec<LocalFactor>,
    pub poles: Vec<PoleDeclaration>,
    pub algebraic_block: Option<AlgebraicCoefficientSet>,
}

impl LFunctionRecord {
    /// a_n, or None when the record does not carry that many coefficients.
    pub fn coefficient(&self, n: u64) -> Option<Complex64> {
        if n == 0 {
            return None;
        }
        self.coefficients.get(n as usize - 1).copied()
    }

    /// The local factor at p, if listed.
    pub fn factor_at(&self, p: u64) -> Option<&LocalFactor> {
        self.euler_factors.iter().find(|f| f.prime == p)
    }

    /// Bad primes (divisors of the conductor) with no listed Euler factor.
    pub fn missing_bad_primes(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n = self.spectral.conductor;
        let mut p = 2u64;
        while p * p <= n {
            if n % p == 0 {
                if self.factor_at(p).is_none() {
                    out.push(p);
                }
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 && self.factor_at(n).is_none() {
            out.push(n);
        }
        out
    }

    /// True when every prime factor of n has a listed Euler factor, so the
    /// expansion can be compared against a_n.
    pub fn prime_support_covered(&self, n: u64) -> bool {
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                if self.factor_at(p).is_none() {
                    return false;
                }
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        m == 1 || self.factor_at(m).is_some()
    }

    /// Character-modulus divisibility M | N (checked by the CHAR_MOD code).
    pub fn character_modulus_divides_conductor(&self) -> bool {
        self.spectral.conductor % self.character.modulus() == 0
    }
}

/// Sanity helper: all finite parts of a complex number.
pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// gcd exposed for schema validation call sites.
pub(crate) fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}
