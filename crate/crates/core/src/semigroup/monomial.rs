//! Free rank-2 witnesses inside monomial semigroups.
//!
//! Two elements `A = α z^N`, `B = β z^N` of equal degree `N ≥ 2` are
//! simultaneously conjugate (by a scaling) to `ρ z^N` and `z^N`, `ρ = α / β`.
//! A word `c_1 ∘ … ∘ c_k` in them has coefficient `β^S ρ^E` with
//! `S = Σ N^(j-1)` and `E = Σ_{c_j = A} N^(j-1)`. Distinct words of one length
//! have distinct base-`N` digit strings, hence distinct `E`, and words of
//! different lengths have different degrees. So the pair is free as soon as
//! `ρ` has infinite order, i.e. `ρ ∉ {1, -1, i, -i}` in ℚ(i).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{enumerate_growth, EnumPolicy, SemigroupError, Word};
use crate::algebra::{Caps, GaussianRational, RationalMap};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialWitness {
    pub left: Word,
    pub right: Word,
    pub degree: u64,
    /// `ρ`, the coefficient ratio of `left` over `right`.
    pub ratio: String,
    /// True when the pair is two of the generators themselves.
    pub from_generators: bool,
    /// Depth to which the exponents `E(w)` were recomputed and found distinct.
    pub exponent_check_depth: usize,
    /// Depth to which fast-path enumeration of the pair found `2^n` maps.
    pub enumeration_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum MonomialFreeness {
    FreeRank2Witness(MonomialWitness),
    NoWitness,
}

impl MonomialFreeness {
    pub fn witness(&self) -> Option<&MonomialWitness> {
        match self {
            MonomialFreeness::FreeRank2Witness(w) => Some(w),
            MonomialFreeness::NoWitness => None,
        }
    }
}

/// Searches equal-degree generator pairs, then pairs `(g_i ∘ g_j, g_j ∘ g_i)`.
pub fn monomial_free_check(generators: &[RationalMap], check_depth: usize) -> Result<MonomialFreeness, SemigroupError> {
    let k = generators.len();
    let mono: Vec<_> = generators
        .iter()
        .map(|g| g.to_monomial().ok_or(SemigroupError::Algebra(crate::algebra::AlgebraError::NotMonomial)))
        .collect::<Result<_, _>>()?;
    if !mono.iter().any(|m| m.degree >= 2) {
        return Err(SemigroupError::Precondition("some generator must have degree at least 2".into()));
    }
    let caps = Caps::default();
    let fast: Vec<RationalMap> = generators.iter().map(RationalMap::to_fast).collect();

    let mut candidates: Vec<(Word, Word, bool)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if mono[i].degree == mono[j].degree && mono[i].degree >= 2 {
                candidates.push((Word::letter(i), Word::letter(j), true));
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if mono[i].degree * mono[j].degree >= 2 {
                candidates.push((Word::letter(j).prepend(i), Word::letter(i).prepend(j), false));
            }
        }
    }

    for (left, right, from_generators) in candidates {
        let a = left.eval(&fast, &caps)?.to_monomial().expect("monomials compose to monomials");
        let b = right.eval(&fast, &caps)?.to_monomial().expect("monomials compose to monomials");
        let ratio = &a.coef.materialize(&caps)? / &b.coef.materialize(&caps)?;
        if ratio.unit_root_exponent().is_some() {
            continue;
        }
        let depth = check_depth.min(20);
        check_exponents(a.degree, depth)?;
        let pair = [RationalMap::from_monomial(a.clone()), RationalMap::from_monomial(b)];
        let enumeration_depth = check_depth.min(12);
        let e = enumerate_growth(&pair, enumeration_depth, &EnumPolicy::default())?;
        let expected: Vec<u64> = (1..=enumeration_depth as u32).map(|n| 1u64 << n).collect();
        if e.table.counts != expected {
            return Err(SemigroupError::Precondition(format!(
                "witness enumeration disagrees with the exponent argument: {:?}",
                e.table.counts
            )));
        }
        return Ok(MonomialFreeness::FreeRank2Witness(MonomialWitness {
            left,
            right,
            degree: a.degree,
            ratio: ratio.short_string(),
            from_generators,
            exponent_check_depth: depth,
            enumeration_depth,
        }));
    }
    Ok(MonomialFreeness::NoWitness)
}

/// Recomputes `E(w)` for every word of each length `≤ depth` and checks
/// that no two coincide. Exponents are kept exact as Gaussian integers.
fn check_exponents(n: u64, depth: usize) -> Result<(), SemigroupError> {
    let base = GaussianRational::from_int(n as i64);
    let mut level: Vec<GaussianRational> = vec![GaussianRational::zero(), GaussianRational::one()];
    let mut weight = GaussianRational::one();
    for len in 1..=depth {
        let distinct: HashSet<&GaussianRational> = level.iter().collect();
        if distinct.len() != 1 << len {
            return Err(SemigroupError::Precondition(format!("exponent collision at length {len}")));
        }
        weight = &weight * &base;
        let w = weight.clone();
        level = level.iter().flat_map(|e| [e.clone(), e + &w]).collect();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_map;

    fn gens(src: &[&str]) -> Vec<RationalMap> {
        src.iter().map(|s| parse_map(s).unwrap()).collect()
    }

    #[test]
    fn unit_circle_coefficient_gives_witness() {
        let r = monomial_free_check(&gens(&["(3/5+4/5i)*z^2", "z^2"]), 10).unwrap();
        let w = r.witness().unwrap();
        assert!(w.from_generators);
        assert_eq!((w.left.letters(), w.right.letters()), (&[0][..], &[1][..]));
        assert_eq!(w.ratio, "3/5+4/5i");
    }

    #[test]
    fn root_of_unity_has_no_witness() {
        assert_eq!(monomial_free_check(&gens(&["i*z^2", "z^2"]), 10).unwrap(), MonomialFreeness::NoWitness);
        assert_eq!(monomial_free_check(&gens(&["z^2", "z^3"]), 10).unwrap(), MonomialFreeness::NoWitness);
    }

    #[test]
    fn non_unit_modulus() {
        let r = monomial_free_check(&gens(&["2z^3", "z^3"]), 10).unwrap();
        assert_eq!(r.witness().unwrap().enumeration_depth, 10);
    }

    #[test]
    fn commutator_pair_when_degrees_differ() {
        // (3/5+4/5i) z^2 and z^3: ratio of g0∘g1 over g1∘g0 is λ^(-2)
        let r = monomial_free_check(&gens(&["(3/5+4/5i)*z^2", "z^3"]), 6).unwrap();
        let w = r.witness().unwrap();
        assert!(!w.from_generators);
        assert_eq!(w.degree, 6);
    }

    #[test]
    fn rejects_non_monomials() {
        assert!(monomial_free_check(&gens(&["z^2+1", "z^2"]), 4).is_err());
        assert!(monomial_free_check(&gens(&["2z", "3z"]), 4).is_err());
    }
}
