//! Lyubich (preimage averaging) and Koopman (precomposition) operators on a
//! small family of test functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::{preimages, RootConfig};
use super::MeasureError;
use crate::algebra::Poly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TestFunction {
    /// `z^k`
    Monomial(u32),
    /// `|z|^k`
    Radial(u32),
    /// `φ ∘ P`, with `P` given by ascending coefficients.
    Pullback(Vec<Complex64>, Box<TestFunction>),
}

impl TestFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Monomial(k) => z.powu(*k),
            TestFunction::Radial(k) => Complex64::new(z.norm().powi(*k as i32), 0.0),
            TestFunction::Pullback(c, inner) => inner.eval(horner(c, z)),
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// `K_P φ = φ ∘ P` as a test function.
pub fn koopman(p: &Poly, phi: &TestFunction) -> TestFunction {
    TestFunction::Pullback(p.to_c64(), Box::new(phi.clone()))
}

pub fn koopman_apply(p: &Poly, phi: &TestFunction, x: Complex64) -> Complex64 {
    phi.eval(p.eval_c64(x))
}

/// `(1/d) Σ_{P(y) = x} φ(y)` over numerically refined preimages.
pub fn lyubich_apply(p: &Poly, phi: &TestFunction, x: Complex64, cfg: &RootConfig) -> Result<Complex64, MeasureError> {
    let d = p.deg();
    if d < 1 {
        return Err(MeasureError::Degree(d));
    }
    let ys = preimages(&p.to_c64(), x, None, cfg).map_err(|e| MeasureError::Sampling { step: 0, point: x, source: e })?;
    let sum: Complex64 = ys.iter().map(|&y| phi.eval(y)).sum();
    Ok(sum / d as f64)
}
