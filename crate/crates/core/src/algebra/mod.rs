//! Exact algebra of polynomials and rational maps over the Gaussian rationals.
//!
//! Composition convention: `f.compose(&g)` is `f ∘ g`, i.e. `z ↦ f(g(z))`.
//! Conjugation convention: `conj(P, γ) = γ⁻¹ ∘ P ∘ γ`, used everywhere.

mod affine;
mod deck;
mod decompose;
mod exceptional;
mod fingerprint;
mod gaussian;
mod map;
mod monomial;
mod parse;
mod poly;

pub use affine::AffineMap;
pub use deck::{center_normalize, deck_group, DeckInfo};
pub use decompose::{decompose, Decomposition, FactorPair};
pub use exceptional::{chebyshev, classify_exceptional, Exceptional};
pub use fingerprint::{collision_bound, Fingerprint, FingerprintContext};
pub use gaussian::GaussianRational;
pub use map::{CanonicalMap, RationalMap};
pub use monomial::{MonoCoef, Monomial};
pub use parse::{parse_constant, parse_map};
pub use poly::Poly;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("constant map rejected (maps must be non-constant)")]
    ConstantMap,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("resource cap exceeded: {resource} needs {requested}, limit {limit}")]
    CapExceeded { resource: &'static str, limit: u64, requested: u64 },
    #[error("expected a polynomial")]
    NotPolynomial,
    #[error("expected a monomial c*z^n")]
    NotMonomial,
    #[error("degree {0} too low for this operation")]
    DegreeTooLow(usize),
    #[error("fingerprint prime {0} divides a coefficient denominator")]
    BadPrime(u64),
    #[error("fingerprint primes exhausted")]
    PrimesExhausted,
}

impl AlgebraError {
    pub fn is_cap(&self) -> bool {
        matches!(self, AlgebraError::CapExceeded { .. })
    }
}

/// Resource caps on exact computation. Coefficient sizes grow doubly
/// exponentially in word length, so these are checked on every composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Bits per rational component of any coefficient.
    pub coeff_bits: u64,
    /// Degree of dense polynomials (monomials carry their degree symbolically).
    pub degree: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { coeff_bits: 1 << 20, degree: 1 << 16 }
    }
}

impl Caps {
    pub fn check_degree(&self, d: u64) -> Result<(), AlgebraError> {
        if d > self.degree {
            Err(AlgebraError::CapExceeded { resource: "degree", limit: self.degree, requested: d })
        } else {
            Ok(())
        }
    }

    pub fn check_poly(&self, p: &Poly) -> Result<(), AlgebraError> {
        let bits = p.max_coeff_bits();
        if bits > self.coeff_bits {
            Err(AlgebraError::CapExceeded {
                resource: "coefficient bits",
                limit: self.coeff_bits,
                requested: bits,
            })
        } else {
            Ok(())
        }
    }
}
