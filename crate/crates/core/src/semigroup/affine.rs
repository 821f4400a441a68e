//! Exact separation of words in affine semigroups.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{SemigroupError, Word};
use crate::algebra::{AffineMap, GaussianRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparationOutcome {
    /// All words of each length `≤ depth` are distinct maps; `count` words at `depth`.
    SeparatedToDepth { count: u64 },
    CollisionFound { length: usize, left: Word, right: Word },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSeparation {
    pub outcome: SeparationOutcome,
    /// The values `w(0)` alone are distinct within each length.
    pub separated_at_zero: bool,
    /// The generators are `a z + b1`, `a z + b2` with `|a| ≥ 2`, `b1 ≠ b2`:
    /// two words of one length differ at `0` by `(b2 - b1) Σ δ_j a^(j-1)`
    /// with `δ_j ∈ {-1, 0, 1}` not all zero, which cannot vanish, and words
    /// of different lengths have different linear parts. So the pair is free.
    pub full_freeness: bool,
}

pub fn affine_orbit_separation(generators: &[AffineMap], depth: usize) -> Result<AffineSeparation, SemigroupError> {
    if generators.is_empty() {
        return Err(SemigroupError::NoGenerators);
    }
    if depth == 0 || generators.len().checked_pow(depth as u32).is_none_or(|n| n > 1 << 22) {
        return Err(SemigroupError::Precondition(format!("depth {depth} out of range")));
    }
    let mut level: Vec<(Word, AffineMap)> =
        generators.iter().enumerate().map(|(i, g)| (Word::letter(i), g.clone())).collect();
    let mut at_zero = true;
    let mut outcome = None;
    for len in 1..=depth {
        if len > 1 {
            level = level
                .iter()
                .flat_map(|(w, m)| generators.iter().enumerate().map(move |(i, g)| (w.prepend(i), g.compose(m))))
                .collect();
        }
        let mut maps: HashMap<&AffineMap, &Word> = HashMap::with_capacity(level.len());
        for (w, m) in &level {
            if let Some(prev) = maps.insert(m, w) {
                outcome = Some(SeparationOutcome::CollisionFound { length: len, left: w.clone(), right: prev.clone() });
                break;
            }
        }
        if outcome.is_some() {
            at_zero = false;
            break;
        }
        if at_zero {
            let values: HashSet<&GaussianRational> = level.iter().map(|(_, m)| &m.b).collect();
            at_zero = values.len() == level.len();
        }
    }
    let outcome = outcome.unwrap_or(SeparationOutcome::SeparatedToDepth { count: level.len() as u64 });
    let full_freeness = matches!(outcome, SeparationOutcome::SeparatedToDepth { .. }) && full_freeness_clause(generators);
    Ok(AffineSeparation { outcome, separated_at_zero: at_zero, full_freeness })
}

fn full_freeness_clause(g: &[AffineMap]) -> bool {
    use num_rational::BigRational;
    let [g1, g2] = g else { return false };
    g1.a == g2.a && g1.b != g2.b && g1.a.norm_sq() >= BigRational::from_integer(4.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(a: i64, b: i64) -> AffineMap {
        AffineMap::new(GaussianRational::from_int(a), GaussianRational::from_int(b)).unwrap()
    }

    #[test]
    fn binary_expansions_separate() {
        let r = affine_orbit_separation(&[aff(2, 0), aff(2, 1)], 10).unwrap();
        assert_eq!(r.outcome, SeparationOutcome::SeparatedToDepth { count: 1024 });
        assert!(r.separated_at_zero && r.full_freeness);
    }

    #[test]
    fn commuting_scalings_collide() {
        let r = affine_orbit_separation(&[aff(2, 0), aff(3, 0)], 4).unwrap();
        match r.outcome {
            SeparationOutcome::CollisionFound { length, left, right } => {
                assert_eq!(length, 2);
                assert_eq!(aff(3, 0).compose(&aff(2, 0)), aff(2, 0).compose(&aff(3, 0)));
                assert_ne!(left, right);
            }
            other => panic!("{other:?}"),
        }
        assert!(!r.full_freeness);
    }

    #[test]
    fn base_three() {
        let r = affine_orbit_separation(&[aff(3, 0), aff(3, 1)], 8).unwrap();
        assert_eq!(r.outcome, SeparationOutcome::SeparatedToDepth { count: 256 });
        assert!(r.full_freeness);
    }

    #[test]
    fn separated_maps_but_not_at_zero() {
        let r = affine_orbit_separation(&[aff(2, 0), aff(4, 0)], 3).unwrap();
        assert!(matches!(r.outcome, SeparationOutcome::CollisionFound { .. }));
        // 2z∘(z+1) and (z+1)∘(z+1) are distinct maps that agree at 0
        let r = affine_orbit_separation(&[aff(2, 0), aff(1, 1)], 2).unwrap();
        assert_eq!(r.outcome, SeparationOutcome::SeparatedToDepth { count: 4 });
        assert!(!r.separated_at_zero && !r.full_freeness);
    }
}
