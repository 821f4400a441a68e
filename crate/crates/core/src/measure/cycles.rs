//! Periodic cycles as discrete invariant measures.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::{roots, RootConfig};
use super::MeasureError;
use crate::algebra::{Caps, Poly};

pub const MAX_CYCLE_DEGREE: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CycleConfig {
    pub tol: f64,
    pub roots: RootConfig,
}

impl Default for CycleConfig {
    fn default() -> Self {
        CycleConfig { tol: 1e-8, roots: RootConfig::default() }
    }
}

/// Uniform measure on one cycle, listed in orbit order from its
/// lexicographically smallest point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleMeasure {
    pub points: Vec<Complex64>,
    /// `|P^period(z) - z|` at each point.
    pub residuals: Vec<f64>,
    pub period: usize,
}

impl CycleMeasure {
    pub fn weight(&self) -> f64 {
        1.0 / self.period as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlagReason {
    Residual,
    /// Another root lies within `2 tol`.
    Cluster,
    /// Forward image matches no other root, or the orbit does not close.
    Orbit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlaggedRoot {
    pub point: Complex64,
    pub reason: FlagReason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleSearch {
    pub k: usize,
    /// Cycles whose period divides `k`.
    pub cycles: Vec<CycleMeasure>,
    pub flagged: Vec<FlaggedRoot>,
    /// `δ_∞` is invariant for every polynomial.
    pub infinity_fixed: bool,
}

fn iterate(c: &[Complex64], dc: &[Complex64], z: Complex64, k: usize) -> (Complex64, Complex64) {
    let horner = |c: &[Complex64], x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |a, b| a * x + b);
    let (mut w, mut dw) = (z, Complex64::new(1.0, 0.0));
    for _ in 0..k {
        dw *= horner(dc, w);
        w = horner(c, w);
    }
    (w, dw)
}

fn lex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Roots of `P^k(z) - z` from the exact iterate, Newton-polished along the
/// orbit, then grouped by forward matching.
pub fn periodic_cycles(p: &Poly, k: usize, cfg: &CycleConfig) -> Result<CycleSearch, MeasureError> {
    let d = p.deg() as u64;
    if d < 2 {
        return Err(MeasureError::Degree(d as usize));
    }
    if k == 0 || d.checked_pow(k as u32).is_none_or(|n| n > MAX_CYCLE_DEGREE) {
        return Err(MeasureError::CycleDegree { degree: d, period: k });
    }
    let caps = Caps::default();
    let mut it = p.clone();
    for _ in 1..k {
        it = p.compose(&it, &caps)?;
    }
    let fk = it.sub(&Poly::z());
    let c = p.to_c64();
    let dc = p.derivative().to_c64();
    let mut zs = roots(&fk.to_c64(), None, &cfg.roots).map_err(|e| MeasureError::Sampling { step: 0, point: Complex64::new(0.0, 0.0), source: e })?;
    for z in zs.iter_mut() {
        for _ in 0..4 {
            let (w, dw) = iterate(&c, &dc, *z, k);
            let step = (w - *z) / (dw - 1.0);
            if !step.is_finite() || step.norm() < 1e-17 * z.norm().max(1.0) {
                break;
            }
            *z -= step;
        }
    }
    let residual = |z: Complex64| (iterate(&c, &dc, z, k).0 - z).norm();
    let n = zs.len();
    let mut flag: Vec<Option<FlagReason>> = vec![None; n];
    for i in 0..n {
        let r = residual(zs[i]);
        if r.is_nan() || r >= cfg.tol {
            flag[i] = Some(FlagReason::Residual);
        } else if (0..n).any(|j| j != i && (zs[i] - zs[j]).norm() <= 2.0 * cfg.tol) {
            flag[i] = Some(FlagReason::Cluster);
        }
    }
    let next: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if flag[i].is_some() {
                return None;
            }
            let w = p.eval_c64(zs[i]);
            (0..n).filter(|&j| flag[j].is_none()).min_by(|&a, &b| (zs[a] - w).norm().total_cmp(&(zs[b] - w).norm())).filter(|&j| (zs[j] - w).norm() < cfg.tol * w.norm().max(1.0))
        })
        .collect();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lex(&zs[a], &zs[b]));
    for &start in &order {
        if seen[start] || flag[start].is_some() {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = start;
        let closed = loop {
            match next[cur] {
                Some(j) if j == start => break true,
                Some(j) if !orbit.contains(&j) && orbit.len() < k => {
                    orbit.push(j);
                    cur = j;
                }
                _ => break false,
            }
        };
        for &i in &orbit {
            seen[i] = true;
        }
        if closed && k.is_multiple_of(orbit.len()) {
            let points: Vec<Complex64> = orbit.iter().map(|&i| zs[i]).collect();
            let per = orbit.len();
            let residuals = points.iter().map(|&z| (iterate(&c, &dc, z, per).0 - z).norm()).collect();
            cycles.push(CycleMeasure { points, residuals, period: per });
        } else {
            for &i in &orbit {
                flag[i] = Some(FlagReason::Orbit);
            }
        }
    }
    cycles.sort_by(|a, b| a.period.cmp(&b.period).then(lex(&a.points[0], &b.points[0])));
    let mut flagged: Vec<FlaggedRoot> = (0..n).filter_map(|i| flag[i].map(|reason| FlaggedRoot { point: zs[i], reason })).collect();
    flagged.sort_by(|a, b| lex(&a.point, &b.point));
    Ok(CycleSearch { k, cycles, flagged, infinity_fixed: true })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharedCycles {
    /// Cycles of `P` that `Q` permutes.
    pub shared: Vec<CycleMeasure>,
    pub rejected: Vec<CycleMeasure>,
    pub flagged: Vec<FlaggedRoot>,
    pub infinity_shared: bool,
}

/// `Q` permutes `C` when each `Q(z)` lies within `tol·max(1, |Q(z)|)` of a
/// distinct point of `C`.
pub fn permutes(q: &Poly, cycle: &CycleMeasure, tol: f64) -> bool {
    let mut hit = vec![false; cycle.points.len()];
    for &z in &cycle.points {
        let w = q.eval_c64(z);
        let Some(j) = (0..cycle.points.len()).find(|&j| !hit[j] && (cycle.points[j] - w).norm() < tol * w.norm().max(1.0)) else {
            return false;
        };
        hit[j] = true;
    }
    true
}

/// Cycles of `P` with period at most `k_max` whose uniform measure is also `Q`-invariant.
pub fn shared_cycle_check(p: &Poly, q: &Poly, k_max: usize, cfg: &CycleConfig) -> Result<SharedCycles, MeasureError> {
    let (mut shared, mut rejected, mut flagged) = (Vec::new(), Vec::new(), Vec::new());
    for k in 1..=k_max {
        let search = periodic_cycles(p, k, cfg)?;
        flagged.extend(search.flagged);
        for c in search.cycles.into_iter().filter(|c| c.period == k) {
            if permutes(q, &c, cfg.tol) {
                shared.push(c);
            } else {
                rejected.push(c);
            }
        }
    }
    Ok(SharedCycles { shared, rejected, flagged, infinity_shared: q.deg() >= 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-10
    }

    #[test]
    fn square_fixed_points_and_two_cycle() {
        let cfg = CycleConfig::default();
        let s = periodic_cycles(&p(&[0, 0, 1]), 1, &cfg).unwrap();
        assert_eq!(s.cycles.len(), 2);
        assert!(close(s.cycles[0].points[0], 0.0, 0.0) && close(s.cycles[1].points[0], 1.0, 0.0));
        assert!(s.infinity_fixed && s.flagged.is_empty());
        let s = periodic_cycles(&p(&[0, 0, 1]), 2, &cfg).unwrap();
        let two: Vec<_> = s.cycles.iter().filter(|c| c.period == 2).collect();
        assert_eq!(two.len(), 1);
        // roots of z^2 + z + 1
        for z in &two[0].points {
            assert!((z * z + z + 1.0).norm() < 1e-12);
        }
        assert!((two[0].weight() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn basilica_two_cycle() {
        let s = periodic_cycles(&p(&[-1, 0, 1]), 2, &CycleConfig::default()).unwrap();
        let two: Vec<_> = s.cycles.iter().filter(|c| c.period == 2).collect();
        assert_eq!(two.len(), 1);
        assert!(close(two[0].points[0], -1.0, 0.0) && close(two[0].points[1], 0.0, 0.0));
    }

    #[test]
    fn soundness_invariants_hold() {
        let cfg = CycleConfig::default();
        let s = periodic_cycles(&p(&[1, 1, 0, 2]), 3, &cfg).unwrap();
        let all: Vec<Complex64> = s.cycles.iter().flat_map(|c| c.points.iter().copied()).collect();
        assert_eq!(all.len() + s.flagged.len(), 27);
        for c in &s.cycles {
            assert!(c.residuals.iter().all(|r| *r < cfg.tol));
        }
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!((a - b).norm() > 2.0 * cfg.tol);
            }
        }
    }

    #[test]
    fn parabolic_point_is_flagged_not_merged() {
        // z^2 + 1/4 has a double fixed point at 1/2
        let poly = Poly::new(vec![crate::algebra::GaussianRational::from_ratio(1, 4), crate::algebra::GaussianRational::from_int(0), crate::algebra::GaussianRational::from_int(1)]);
        let s = periodic_cycles(&poly, 1, &CycleConfig { tol: 1e-4, ..CycleConfig::default() }).unwrap();
        assert!(s.cycles.is_empty());
        assert_eq!(s.flagged.len(), 2);
    }

    #[test]
    fn shared_examples() {
        let cfg = CycleConfig::default();
        let r = shared_cycle_check(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1]), 2, &cfg).unwrap();
        assert_eq!(r.shared.len(), 2);
        assert!(close(r.shared[0].points[0], 0.0, 0.0) && close(r.shared[1].points[0], 1.0, 0.0));
        let r = shared_cycle_check(&p(&[0, 0, 1]), &p(&[0, 0, -1]), 2, &cfg).unwrap();
        assert_eq!(r.shared.len(), 1);
        assert!(r.rejected.iter().any(|c| c.period == 1 && close(c.points[0], 1.0, 0.0)));
        let r = shared_cycle_check(&p(&[0, 0, 1]), &p(&[1, 0, 1]), 2, &cfg).unwrap();
        assert!(r.shared.is_empty() && r.infinity_shared);
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(periodic_cycles(&p(&[0, 0, 1]), 13, &CycleConfig::default()), Err(MeasureError::CycleDegree { .. })));
    }
}
