//! Functional decomposition `P = G ∘ T` by undetermined coefficients.
//!
//! For each proper divisor `t` of `d = deg P` there is at most one monic right
//! factor `T` of degree `t` with `T(0) = 0`: its top coefficients are fixed by
//! matching `T^(d/t)` against the top of `P / lead(P)`. The left factor is then
//! read off from the base-`T` expansion of `P`. Decomposability is searched
//! over ℚ(i) only; in characteristic 0 it does not depend on the field.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Caps, GaussianRational, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// One `(G, T)` per divisor `t` that admits a decomposition, `t` increasing.
    Decomposable(Vec<(Poly, Poly)>),
    Prime,
}

/// Printable form used in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPair {
    pub right_degree: usize,
    pub left: String,
    pub right: String,
}

impl Decomposition {
    pub fn pairs(&self) -> &[(Poly, Poly)] {
        match self {
            Decomposition::Decomposable(v) => v,
            Decomposition::Prime => &[],
        }
    }

    pub fn is_prime(&self) -> bool {
        matches!(self, Decomposition::Prime)
    }

    pub fn factor_pairs(&self) -> Vec<FactorPair> {
        self.pairs()
            .iter()
            .map(|(g, t)| FactorPair { right_degree: t.deg(), left: g.to_string(), right: t.to_string() })
            .collect()
    }
}

pub fn decompose(p: &Poly) -> Result<Decomposition, AlgebraError> {
    let d = p.deg();
    if d < 2 {
        return Err(AlgebraError::DegreeTooLow(d));
    }
    let mut found = Vec::new();
    for t in (2..d).filter(|t| d.is_multiple_of(*t)) {
        if let Some(pair) = try_right_factor(p, t)? {
            found.push(pair);
        }
    }
    Ok(if found.is_empty() { Decomposition::Prime } else { Decomposition::Decomposable(found) })
}

fn try_right_factor(p: &Poly, t: usize) -> Result<Option<(Poly, Poly)>, AlgebraError> {
    let d = p.deg();
    let r = d / t;
    let monic = p.monic();
    let r_inv = GaussianRational::from_ratio(1, r as i64);
    // T = z^t + τ_{t-1} z^{t-1} + ... + τ_1 z
    let mut coeffs = vec![GaussianRational::zero(); t + 1];
    coeffs[t] = GaussianRational::one();
    for j in 1..t {
        let current = Poly::new(coeffs.clone()).pow(r as u32);
        let gap = &monic.coeff(d - j) - &current.coeff(d - j);
        // raising τ_{t-j} by δ moves [z^{d-j}] T^r by r δ and leaves higher terms alone
        coeffs[t - j] = &coeffs[t - j] + &(&gap * &r_inv);
    }
    let right = Poly::new(coeffs);

    // base-T expansion: every digit must be a constant
    let mut digits = Vec::with_capacity(r + 1);
    let mut rest = p.clone();
    while !rest.is_zero() {
        let (q, rem) = rest.div_rem(&right);
        if rem.deg() > 0 {
            return Ok(None);
        }
        digits.push(rem.coeff(0));
        rest = q;
    }
    let left = Poly::new(digits);
    let check = left.compose(&right, &Caps::default())?;
    Ok((check == *p).then_some((left, right)))
}
