//! Combines growth, relation probes, measures and certificates into one status.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    affine_orbit_separation, common_iterate, enumerate_growth, growth_classify, levin_check, monomial_free_check,
    zieve_zhan_search, AffineSeparation, Confirmation, EnumPolicy, GrowthFit, GrowthTable, GrowthThresholds,
    MonomialFreeness, ProbeOutcome, Relation, SemigroupError, ZieveZhanReport,
};
use crate::algebra::{AffineMap, Poly, RationalMap};
use crate::measure::{brolin_sample, measure_distance, CompareConfig, ComparisonReport, SampleConfig};
use crate::pingpong::{certify_auto, AutoOptions, FailedCheck, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    ProvedFree,
    ProvedRelated,
    EvidenceAmenable,
    EvidenceFree,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    pub max_len: usize,
    pub policy: EnumPolicy,
    pub thresholds: GrowthThresholds,
    /// Bound on `n, m` in the iterate probes.
    pub probe_max: u32,
    pub samples: usize,
    pub burn_in: usize,
    pub seed: u64,
    pub compare: CompareConfig,
    pub certify: bool,
    pub auto: AutoOptions,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: 10,
            policy: EnumPolicy::default(),
            thresholds: GrowthThresholds::default(),
            probe_max: 4,
            samples: 20_000,
            burn_in: 64,
            seed: 0x5eed,
            compare: CompareConfig::default(),
            certify: false,
            auto: AutoOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairProbes {
    pub common_iterate: ProbeOutcome<(u32, u32)>,
    pub levin: ProbeOutcome<(u32, u32)>,
    pub zieve_zhan: ZieveZhanReport,
}

/// Outcome of the certificate search; the full certificate is not kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub free: bool,
    pub disk_radius: f64,
    pub leaf_count: u64,
    pub max_depth: u32,
    pub failed: Vec<FailedCheck>,
    pub radii_tried: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub status: Status,
    pub table: GrowthTable,
    pub growth: Option<GrowthFit>,
    pub relations: Vec<Relation>,
    pub relations_total: u64,
    pub probes: Option<PairProbes>,
    pub measures: Option<ComparisonReport>,
    pub affine: Option<AffineSeparation>,
    pub monomial: Option<MonomialFreeness>,
    pub certificate: Option<CertificateSummary>,
    pub notes: Vec<String>,
}

fn polynomial_pair(gens: &[RationalMap]) -> Option<(Poly, Poly)> {
    match gens {
        [a, b] if a.is_polynomial() && b.is_polynomial() => {
            let (p, q) = (a.as_poly().ok()?, b.as_poly().ok()?);
            (p.deg() >= 2 && q.deg() >= 2).then_some((p, q))
        }
        _ => None,
    }
}

/// `Proved*` only from exact artifacts: a relation checked by exact
/// equality, a ping-pong certificate, the affine digit argument, or an
/// exponent-verified monomial witness built from the generators.
pub fn amenability_verdict(gens: &[RationalMap], budget: &Budget) -> Result<VerdictReport, SemigroupError> {
    let en = enumerate_growth(gens, budget.max_len, &budget.policy)?;
    let mut notes = Vec::new();
    let growth = match growth_classify(&en.table, &budget.thresholds) {
        Ok(fit) => Some(fit),
        Err(e) => {
            notes.push(format!("growth not classified: {e}"));
            None
        }
    };
    if en.has_fingerprint_only() {
        notes.push("some identifications rest on fingerprints only".into());
    }

    let caps = &budget.policy.caps;
    let probes = match gens {
        [r, q] => Some(PairProbes {
            common_iterate: common_iterate(r, q, budget.probe_max * 2, caps)?,
            levin: levin_check(r, q, budget.probe_max, caps)?,
            zieve_zhan: zieve_zhan_search(r, q, budget.probe_max.min(3), caps)?,
        }),
        _ => None,
    };

    let polys = polynomial_pair(gens);
    let measures = match &polys {
        Some((p, q)) => {
            let cfg = |seed| SampleConfig { samples: budget.samples, burn_in: budget.burn_in, seed, start: Complex64::new(1.0, 0.0), ..SampleConfig::default() };
            match (brolin_sample(p, &cfg(budget.seed)), brolin_sample(q, &cfg(budget.seed.wrapping_add(1)))) {
                (Ok(a), Ok(b)) => measure_distance(&a, &b, &budget.compare).ok(),
                (Err(e), _) | (_, Err(e)) => {
                    notes.push(format!("measure sampling failed: {e}"));
                    None
                }
            }
        }
        None => None,
    };

    let affine_gens: Option<Vec<AffineMap>> = gens.iter().map(AffineMap::from_map).collect();
    let affine = match affine_gens {
        Some(a) => Some(affine_orbit_separation(&a, budget.max_len.min(16))?),
        None => None,
    };

    let monomial = if gens.iter().all(|g| g.to_monomial().is_some()) && gens.iter().any(|g| g.degree() >= 2) {
        Some(monomial_free_check(gens, budget.max_len)?)
    } else {
        None
    };

    let certificate = match (&polys, budget.certify) {
        (Some((p, q)), true) => {
            let res = certify_auto(p, q, &budget.auto).map_err(|e| SemigroupError::Precondition(e.to_string()))?;
            let c = &res.certificate;
            Some(CertificateSummary {
                free: c.is_free(),
                disk_radius: c.disk.radius.to_f64(),
                leaf_count: c.leaf_count,
                max_depth: c.max_depth,
                failed: match &c.verdict {
                    Verdict::Free => Vec::new(),
                    Verdict::Inconclusive { failed, .. } => failed.clone(),
                },
                radii_tried: res.attempts.iter().map(|a| a.radius).collect(),
            })
        }
        _ => None,
    };

    let exact_relation = en.relations.iter().any(|r| r.confirmed == Confirmation::Exact)
        || probes.as_ref().is_some_and(|p| p.common_iterate.found().is_some() || p.levin.found().is_some() || p.zieve_zhan.outcome.found().is_some());
    let free_proof = certificate.as_ref().is_some_and(|c| c.free)
        || affine.as_ref().is_some_and(|a| a.full_freeness)
        || monomial.as_ref().and_then(|m| m.witness()).is_some_and(|w| w.from_generators);

    let status = match (exact_relation, free_proof) {
        (true, true) => {
            notes.push("an exact relation and a freeness proof coexist; check the inputs".into());
            Status::Inconclusive
        }
        (true, false) => Status::ProvedRelated,
        (false, true) => Status::ProvedFree,
        (false, false) => {
            let separated = affine.as_ref().is_some_and(|a| matches!(a.outcome, super::SeparationOutcome::SeparatedToDepth { .. }));
            match growth.map(|g| g.class) {
                Some(super::GrowthClass::ExponentialEvidence) => Status::EvidenceFree,
                Some(super::GrowthClass::BoundedPerLength | super::GrowthClass::PolynomialEvidence) => Status::EvidenceAmenable,
                _ if separated => Status::EvidenceFree,
                _ => Status::Inconclusive,
            }
        }
    };

    Ok(VerdictReport {
        status,
        table: en.table,
        growth,
        relations: en.relations,
        relations_total: en.relations_total,
        probes,
        measures,
        affine,
        monomial,
        certificate,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_map;
    use crate::measure::MeasureVerdict;
    use crate::semigroup::GrowthClass;

    fn gens(s: &[&str]) -> Vec<RationalMap> {
        s.iter().map(|x| parse_map(x).unwrap()).collect()
    }

    fn quick() -> Budget {
        Budget { max_len: 8, samples: 5000, ..Budget::default() }
    }

    #[test]
    fn sign_pair_is_related() {
        let r = amenability_verdict(&gens(&["z^2", "-z^2"]), &quick()).unwrap();
        assert_eq!(r.status, Status::ProvedRelated);
        assert_eq!(r.growth.unwrap().class, GrowthClass::BoundedPerLength);
        assert_eq!(r.measures.unwrap().verdict, MeasureVerdict::LikelyEqual);
    }

    #[test]
    fn affine_digits_are_free() {
        let r = amenability_verdict(&gens(&["2z", "2z+1"]), &quick()).unwrap();
        assert_eq!(r.status, Status::ProvedFree);
        assert_eq!(r.growth.unwrap().class, GrowthClass::ExponentialEvidence);
        assert!(r.affine.unwrap().full_freeness);
    }

    #[test]
    fn commuting_scalings_related() {
        let r = amenability_verdict(&gens(&["2z", "3z"]), &quick()).unwrap();
        assert_eq!(r.status, Status::ProvedRelated);
    }

    #[test]
    fn shifted_quadratics_need_the_certificate() {
        let g = gens(&["z^2+6", "z^2-6"]);
        let b = Budget { max_len: 6, samples: 2000, ..Budget::default() };
        assert_eq!(amenability_verdict(&g, &b).unwrap().status, Status::EvidenceFree);
        let r = amenability_verdict(&g, &Budget { certify: true, ..b }).unwrap();
        assert_eq!(r.status, Status::ProvedFree);
        assert!(r.certificate.unwrap().free);
    }
}
