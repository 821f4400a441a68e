use serde::{Deserialize, Serialize};

use super::{GrowthTable, SemigroupError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthClass {
    BoundedPerLength,
    PolynomialEvidence,
    ExponentialEvidence,
    Inconclusive,
}

/// Slope cutoffs for the least-squares fit of `log2 counts[n]` against `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GrowthThresholds {
    pub window: usize,
    pub min_lengths: usize,
    pub bounded: f64,
    pub polynomial: f64,
    pub exponential: f64,
}

impl Default for GrowthThresholds {
    fn default() -> Self {
        GrowthThresholds { window: 5, min_lengths: 6, bounded: 0.1, polynomial: 0.2, exponential: 0.5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub class: GrowthClass,
    pub slope: f64,
}

pub fn growth_classify(table: &GrowthTable, th: &GrowthThresholds) -> Result<GrowthFit, SemigroupError> {
    let n = table.counts.len();
    if n < th.min_lengths.max(2) || th.window < 2 {
        return Err(SemigroupError::TooFewLengths { needed: th.min_lengths.max(2), got: n });
    }
    let start = n.saturating_sub(th.window);
    let window = &table.counts[start..];
    let xs: Vec<f64> = (start + 1..=n).map(|x| x as f64).collect();
    let ys: Vec<f64> = window.iter().map(|&c| (c as f64).log2()).collect();
    let slope = least_squares_slope(&xs, &ys);
    let non_growing = window.iter().all(|&c| c <= window[0]);
    let class = if slope > th.exponential {
        GrowthClass::ExponentialEvidence
    } else if table.is_truncated() {
        GrowthClass::Inconclusive
    } else if slope < th.bounded && non_growing {
        GrowthClass::BoundedPerLength
    } else if slope < th.polynomial {
        GrowthClass::PolynomialEvidence
    } else {
        GrowthClass::Inconclusive
    };
    Ok(GrowthFit { class, slope })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(counts: Vec<u64>) -> GrowthTable {
        let exact = vec![true; counts.len()];
        GrowthTable { counts, exact, truncated_at: None }
    }

    #[test]
    fn reference_shapes() {
        let th = GrowthThresholds::default();
        assert_eq!(growth_classify(&table(vec![2; 6]), &th).unwrap().class, GrowthClass::BoundedPerLength);
        let fit = growth_classify(&table((1..=12).map(|n| 1 << n).collect()), &th).unwrap();
        assert_eq!(fit.class, GrowthClass::ExponentialEvidence);
        assert!((fit.slope - 1.0).abs() < 1e-12);
        let fit = growth_classify(&table((1..=12).map(|n| n + 1).collect()), &th).unwrap();
        assert_eq!(fit.class, GrowthClass::PolynomialEvidence);
    }

    /// Independent recomputation of the window slope for `n + 1`, n = 8..12.
    #[test]
    fn affine_growth_slope_value() {
        let ys: Vec<f64> = (8..=12).map(|n: i32| ((n + 1) as f64).log2()).collect();
        // closed form for x = -2..2: slope = Σ x y / 10
        let direct = (-2..=2).zip(&ys).map(|(x, y)| x as f64 * y).sum::<f64>() / 10.0;
        let fit = growth_classify(&table((1..=12).map(|n| n + 1).collect()), &GrowthThresholds::default()).unwrap();
        assert!((fit.slope - direct).abs() < 1e-12);
        assert!(fit.slope > 0.1 && fit.slope < 0.2, "{}", fit.slope);
    }

    #[test]
    fn truncation_and_short_tables() {
        let th = GrowthThresholds::default();
        let mut t = table(vec![2; 7]);
        t.truncated_at = Some(8);
        assert_eq!(growth_classify(&t, &th).unwrap().class, GrowthClass::Inconclusive);
        let mut t = table((1..=7).map(|n| 1 << n).collect());
        t.truncated_at = Some(8);
        assert_eq!(growth_classify(&t, &th).unwrap().class, GrowthClass::ExponentialEvidence);
        assert!(matches!(growth_classify(&table(vec![2; 5]), &th), Err(SemigroupError::TooFewLengths { .. })));
        // slope 0.3 sits between the cutoffs
        let t = table((0..8).map(|n| (2f64.powf(0.3 * n as f64) * 1000.0).round() as u64).collect());
        assert_eq!(growth_classify(&t, &th).unwrap().class, GrowthClass::Inconclusive);
    }
}
