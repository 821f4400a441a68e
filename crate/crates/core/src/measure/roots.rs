//! Simultaneous polynomial root refinement (Aberth–Ehrlich) in double precision.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RootConfig {
    pub max_iter: usize,
    /// Residual `|p(z)| / Σ|c_j| max(|z|, 1)^j` required at every root.
    pub tol: f64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { max_iter: 200, tol: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum RootError {
    #[error("root refinement did not converge (degree {degree}, worst residual {residual:e})")]
    NonConvergence { degree: usize, residual: f64 },
    #[error("polynomial has degree zero")]
    Constant,
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let az = z.norm().max(1.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        scale = scale * az + a.norm();
    }
    (p, dp, scale)
}

fn relative_residual(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _, s) = eval_with_derivative(c, z);
    if s == 0.0 {
        0.0
    } else {
        p.norm() / s
    }
}

fn initial_guesses(c: &[Complex64], phase: f64) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d].norm();
    // Fujiwara-type bound on the root moduli
    let bound = (1..=d)
        .map(|k| (c[d - k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let r = 0.5 * bound;
    (0..d)
        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / d as f64 + phase))
        .collect()
}

fn aberth(c: &[Complex64], mut z: Vec<Complex64>, cfg: &RootConfig) -> Result<Vec<Complex64>, f64> {
    let d = z.len();
    let mut done = vec![false; d];
    for _ in 0..cfg.max_iter {
        let mut all = true;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp, s) = eval_with_derivative(c, z[k]);
            if s == 0.0 || p.norm() <= cfg.tol * s {
                done[k] = true;
                continue;
            }
            all = false;
            let ratio = p / dp;
            let sum: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
            } else {
                z[k] += Complex64::new(1e-3, 1e-3);
            }
        }
        if all {
            return Ok(z);
        }
    }
    let worst = z.iter().map(|&r| relative_residual(c, r)).fold(0.0, f64::max);
    if worst <= cfg.tol {
        Ok(z)
    } else {
        Err(worst)
    }
}

fn polish(c: &[Complex64], z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp, _) = eval_with_derivative(c, *r);
            let step = p / dp;
            if step.is_finite() && relative_residual(c, *r - step) <= relative_residual(c, *r) {
                *r -= step;
            } else {
                break;
            }
        }
    }
}

/// All roots of `Σ c_j z^j` (ascending, trailing coefficient nonzero).
/// `warm` seeds the iteration; a cold start and perturbed restarts follow on failure.
pub fn roots(c: &[Complex64], warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>, RootError> {
    let mut c = c.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let d = c.len().saturating_sub(1);
    if d == 0 {
        return Err(RootError::Constant);
    }
    if d == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    if let Some(w) = warm.filter(|w| w.len() == d) {
        // tiny deterministic perturbation keeps warm guesses pairwise distinct
        starts.push(w.iter().enumerate().map(|(k, z)| z + Complex64::new(1e-9, 1e-9 * k as f64)).collect());
    }
    starts.push(initial_guesses(&c, 0.4));
    starts.push(initial_guesses(&c, 1.3));
    starts.push(initial_guesses(&c, 2.1).into_iter().map(|z| z * 1.7).collect());
    let mut worst = f64::INFINITY;
    for s in starts {
        match aberth(&c, s, cfg) {
            Ok(mut z) => {
                polish(&c, &mut z);
                return Ok(z);
            }
            Err(r) => worst = worst.min(r),
        }
    }
    Err(RootError::NonConvergence { degree: d, residual: worst })
}

/// Solutions of `P(z) = w`.
pub fn preimages(p: &[Complex64], w: Complex64, warm: Option<&[Complex64]>, cfg: &RootConfig) -> Result<Vec<Complex64>, RootError> {
    let mut c = p.to_vec();
    c[0] -= w;
    roots(&c, warm, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_and_cubic() {
        let cfg = RootConfig::default();
        let mut r = roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], None, &cfg).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14 && (r[1] - c(1.0, 0.0)).norm() < 1e-14);
        // (z-1)(z-2)(z-3)
        let r = roots(&[c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)], None, &cfg).unwrap();
        for target in [1.0, 2.0, 3.0] {
            assert!(r.iter().any(|z| (z - c(target, 0.0)).norm() < 1e-10));
        }
    }

    #[test]
    fn high_degree_unit_roots() {
        let mut p = vec![c(0.0, 0.0); 65];
        p[0] = c(-1.0, 0.0);
        p[64] = c(1.0, 0.0);
        let r = roots(&p, None, &RootConfig::default()).unwrap();
        assert_eq!(r.len(), 64);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn warm_start_is_used() {
        let p = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let w = c(0.3, 0.4);
        let first = preimages(&p, w, None, &RootConfig::default()).unwrap();
        let again = preimages(&p, c(0.3, 0.41), Some(&first), &RootConfig::default()).unwrap();
        for z in again {
            assert!((z * z - c(0.3, 0.41)).norm() < 1e-12);
        }
    }

    #[test]
    fn multiple_root_still_converges_in_residual() {
        // triple root at 0: accepted once the scaled residual is small
        let r = roots(&[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], None, &RootConfig::default()).unwrap();
        assert!(r.iter().all(|z| z.norm() < 1e-3));
        assert_eq!(roots(&[c(1.0, 0.0)], None, &RootConfig::default()), Err(RootError::Constant));
    }
}
