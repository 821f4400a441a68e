//! Empirical moments and two-sample comparison of point clouds.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::PointCloud;
use super::MeasureError;
use crate::algebra::Poly;

pub const MAX_MOMENT: usize = 16;

/// `complex[k-1] = (1/N) Σ z^k`, `radial[k-1] = (1/N) Σ |z|^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentVector {
    pub complex: Vec<Complex64>,
    pub radial: Vec<f64>,
}

impl MomentVector {
    pub fn order(&self) -> usize {
        self.complex.len()
    }

    /// `max_k |m_k(self) - m_k(other)|` over the complex moments.
    pub fn distance(&self, other: &MomentVector) -> f64 {
        self.complex.iter().zip(&other.complex).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub fn moments(points: &[Complex64], k: usize) -> Result<MomentVector, MeasureError> {
    if points.is_empty() {
        return Err(MeasureError::EmptyCloud);
    }
    if k == 0 || k > MAX_MOMENT {
        return Err(MeasureError::MomentOrder(k));
    }
    let mut complex = vec![Complex64::new(0.0, 0.0); k];
    let mut radial = vec![0.0; k];
    for &z in points {
        let (mut zk, r) = (z, z.norm());
        let mut rk = r;
        for j in 0..k {
            complex[j] += zk;
            radial[j] += rk;
            zk *= z;
            rk *= r;
        }
    }
    let n = points.len() as f64;
    complex.iter_mut().for_each(|m| *m /= n);
    radial.iter_mut().for_each(|m| *m /= n);
    Ok(MomentVector { complex, radial })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasureVerdict {
    LikelyEqual,
    LikelyDifferent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CompareConfig {
    pub k: usize,
    pub energy_pairs: usize,
    pub energy_threshold: f64,
    /// Overrides `5 (1/√N_A + 1/√N_B)`.
    pub moment_threshold: Option<f64>,
    pub seed: u64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        CompareConfig { k: 6, energy_pairs: 10_000, energy_threshold: 0.1, moment_threshold: None, seed: 0xe6e7 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub moment_distance: f64,
    pub energy_distance: f64,
    pub moment_threshold: f64,
    pub energy_threshold: f64,
    pub k: usize,
    pub verdict: MeasureVerdict,
}

/// Equal when both distances are under threshold, different when either
/// exceeds twice its threshold, inconclusive in between.
pub fn measure_distance(a: &PointCloud, b: &PointCloud, cfg: &CompareConfig) -> Result<ComparisonReport, MeasureError> {
    let ma = moments(&a.points, cfg.k)?;
    let mb = moments(&b.points, cfg.k)?;
    let moment_distance = ma.distance(&mb);
    let moment_threshold = cfg
        .moment_threshold
        .unwrap_or(5.0 * (1.0 / (a.len() as f64).sqrt() + 1.0 / (b.len() as f64).sqrt()));
    let energy_distance = energy(&a.points, &b.points, cfg.energy_pairs, cfg.seed);
    let verdict = if moment_distance < moment_threshold && energy_distance < cfg.energy_threshold {
        MeasureVerdict::LikelyEqual
    } else if moment_distance > 2.0 * moment_threshold || energy_distance > 2.0 * cfg.energy_threshold {
        MeasureVerdict::LikelyDifferent
    } else {
        MeasureVerdict::Inconclusive
    };
    Ok(ComparisonReport { moment_distance, energy_distance, moment_threshold, energy_threshold: cfg.energy_threshold, k: cfg.k, verdict })
}

/// Monte-Carlo `2E|X-Y| - E|X-X'| - E|Y-Y'|`. All three terms read the same
/// uniform index pairs, so identical clouds give exactly 0.
fn energy(a: &[Complex64], b: &[Complex64], pairs: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |u: f64, n: usize| ((u * n as f64) as usize).min(n - 1);
    let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for _ in 0..pairs.max(1) {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (ai, aj, bi, bj) = (pick(u, a.len()), pick(v, a.len()), pick(u, b.len()), pick(v, b.len()));
        xy += 0.5 * ((a[ai] - b[bj]).norm() + (a[aj] - b[bi]).norm());
        xx += (a[ai] - a[aj]).norm();
        yy += (b[bi] - b[bj]).norm();
    }
    (2.0 * xy - xx - yy) / pairs.max(1) as f64
}

/// Moment distance between a cloud and its image under `P`.
pub fn invariance_residual(p: &Poly, cloud: &PointCloud, k: usize) -> Result<f64, MeasureError> {
    let pushed: Vec<Complex64> = cloud.points.iter().map(|&z| p.eval_c64(z)).collect();
    Ok(moments(&cloud.points, k)?.distance(&moments(&pushed, k)?))
}
