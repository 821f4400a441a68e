//! Exact searches for specific identities between iterates.
//!
//! Pairs `(n, m)` are swept diagonally: by `n + m`, then by `n`. Triples
//! `(k, n, m)` are swept by `k + n + m`, then lexicographically.

use serde::{Deserialize, Serialize};

use super::{enumerate_growth, EnumPolicy, Relation, SemigroupError};
use crate::algebra::{AlgebraError, Caps, Poly, RationalMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeOutcome<T> {
    Found(T),
    NotFound,
    /// Some candidates could not be decided within the caps.
    Inconclusive { skipped: u64 },
}

impl<T> ProbeOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            ProbeOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    fn finish(skipped: u64) -> Self {
        if skipped > 0 {
            ProbeOutcome::Inconclusive { skipped }
        } else {
            ProbeOutcome::NotFound
        }
    }
}

/// Lazily computed iterates `f^1, f^2, …`; a cap failure sticks.
struct Iterates<'a> {
    f: RationalMap,
    caps: &'a Caps,
    cache: Vec<RationalMap>,
    failed_at: Option<u32>,
}

impl<'a> Iterates<'a> {
    fn new(f: &RationalMap, caps: &'a Caps) -> Self {
        let f = f.to_fast();
        Iterates { cache: vec![f.clone()], f, caps, failed_at: None }
    }

    fn get(&mut self, n: u32) -> Result<Option<&RationalMap>, AlgebraError> {
        assert!(n >= 1);
        if self.failed_at.is_some_and(|k| n >= k) {
            return Ok(None);
        }
        while self.cache.len() < n as usize {
            match self.f.compose_capped(self.cache.last().expect("nonempty"), self.caps) {
                Ok(next) => self.cache.push(next),
                Err(e) if e.is_cap() => {
                    self.failed_at = Some(self.cache.len() as u32 + 1);
                    return Ok(None);
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Some(&self.cache[n as usize - 1]))
    }
}

fn same(a: &RationalMap, b: &RationalMap, caps: &Caps) -> Result<Option<bool>, AlgebraError> {
    match a.equals_exact_capped(b, caps) {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => Ok(None),
        Err(e) => Err(e),
    }
}

fn compose(a: &RationalMap, b: &RationalMap, caps: &Caps) -> Result<Option<RationalMap>, AlgebraError> {
    match a.compose_capped(b, caps) {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => Ok(None),
        Err(e) => Err(e),
    }
}

fn diagonal(max: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..=2 * max).flat_map(move |s| (1..=max).filter_map(move |n| s.checked_sub(n).filter(|m| (1..=max).contains(m)).map(|m| (n, m))))
}

/// `d1^n == d2^m`, or `None` when a side overflows.
fn degrees_match(d1: u64, n: u32, d2: u64, m: u32) -> Option<bool> {
    Some(d1.checked_pow(n)? == d2.checked_pow(m)?)
}

/// Smallest `(n, m)` with `f^n = g^m`.
pub fn common_iterate(f: &RationalMap, g: &RationalMap, max_n: u32, caps: &Caps) -> Result<ProbeOutcome<(u32, u32)>, SemigroupError> {
    let (mut fi, mut gi) = (Iterates::new(f, caps), Iterates::new(g, caps));
    let mut skipped = 0;
    for (n, m) in diagonal(max_n) {
        match degrees_match(f.degree(), n, g.degree(), m) {
            Some(false) => continue,
            None => {
                skipped += 1;
                continue;
            }
            Some(true) => {}
        }
        let (Some(a), Some(b)) = (fi.get(n)?.cloned(), gi.get(m)?) else {
            skipped += 1;
            continue;
        };
        match same(&a, b, caps)? {
            Some(true) => return Ok(ProbeOutcome::Found((n, m))),
            Some(false) => {}
            None => skipped += 1,
        }
    }
    Ok(ProbeOutcome::finish(skipped))
}

/// Smallest `(n, m)` with `R^n ∘ Q^m = R^{2n}` and `Q^m ∘ R^n = Q^{2m}`.
pub fn levin_check(r: &RationalMap, q: &RationalMap, max_n: u32, caps: &Caps) -> Result<ProbeOutcome<(u32, u32)>, SemigroupError> {
    let (mut ri, mut qi) = (Iterates::new(r, caps), Iterates::new(q, caps));
    let mut skipped = 0;
    for (n, m) in diagonal(max_n) {
        match degrees_match(q.degree(), m, r.degree(), n) {
            Some(false) => continue,
            None => {
                skipped += 1;
                continue;
            }
            Some(true) => {}
        }
        let parts = (ri.get(n)?.cloned(), ri.get(2 * n)?.cloned(), qi.get(m)?.cloned(), qi.get(2 * m)?.cloned());
        let (Some(rn), Some(r2n), Some(qm), Some(q2m)) = parts else {
            skipped += 1;
            continue;
        };
        let first = match compose(&rn, &qm, caps)? {
            Some(c) => same(&c, &r2n, caps)?,
            None => None,
        };
        match first {
            Some(false) => continue,
            None => {
                skipped += 1;
                continue;
            }
            Some(true) => {}
        }
        match compose(&qm, &rn, caps)? {
            Some(c) => match same(&c, &q2m, caps)? {
                Some(true) => return Ok(ProbeOutcome::Found((n, m))),
                Some(false) => {}
                None => skipped += 1,
            },
            None => skipped += 1,
        }
    }
    Ok(ProbeOutcome::finish(skipped))
}

/// Whether `R` and `Q` share a superattracting fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SharedSuperattracting {
    Infinity,
    Finite,
    NotFound,
}

impl SharedSuperattracting {
    pub fn holds(&self) -> bool {
        !matches!(self, SharedSuperattracting::NotFound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZieveZhanReport {
    pub outcome: ProbeOutcome<(u32, u32, u32)>,
    pub hypothesis: SharedSuperattracting,
}

/// Decides the hypothesis exactly: `∞` is superattracting and fixed for
/// `N/D` when `deg N ≥ deg D + 2`; a finite common one exists iff the fixed
/// point and critical point polynomials of both maps share a root.
pub fn shared_superattracting(r: &RationalMap, q: &RationalMap, caps: &Caps) -> Result<SharedSuperattracting, AlgebraError> {
    let parts = |f: &RationalMap| -> Result<(Poly, Poly), AlgebraError> {
        let d = f.to_dense(caps)?;
        Ok((d.num()?, d.den()))
    };
    let (rn, rd) = parts(r)?;
    let (qn, qd) = parts(q)?;
    if rn.deg() >= rd.deg() + 2 && qn.deg() >= qd.deg() + 2 {
        return Ok(SharedSuperattracting::Infinity);
    }
    let fixed = |n: &Poly, d: &Poly| n.sub(&d.mul(&Poly::z()));
    let critical = |n: &Poly, d: &Poly| n.derivative().mul(d).sub(&n.mul(&d.derivative()));
    let g = [fixed(&qn, &qd), critical(&rn, &rd), critical(&qn, &qd)]
        .iter()
        .fold(fixed(&rn, &rd), |acc, p| acc.gcd(p));
    Ok(if !g.is_zero() && g.deg() >= 1 { SharedSuperattracting::Finite } else { SharedSuperattracting::NotFound })
}

/// Smallest `(k, n, m)` with `R^n ∘ Q^m` commuting with `R^k`.
pub fn zieve_zhan_search(r: &RationalMap, q: &RationalMap, max_k: u32, caps: &Caps) -> Result<ZieveZhanReport, SemigroupError> {
    let hypothesis = shared_superattracting(r, q, caps)?;
    let (mut ri, mut qi) = (Iterates::new(r, caps), Iterates::new(q, caps));
    let mut skipped = 0;
    for s in 3..=3 * max_k {
        for k in 1..=max_k {
            for n in 1..=max_k {
                let Some(m) = s.checked_sub(k + n).filter(|m| (1..=max_k).contains(m)) else { continue };
                let parts = (ri.get(k)?.cloned(), ri.get(n)?.cloned(), qi.get(m)?.cloned());
                let (Some(rk), Some(rn), Some(qm)) = parts else {
                    skipped += 1;
                    continue;
                };
                let Some(w) = compose(&rn, &qm, caps)? else {
                    skipped += 1;
                    continue;
                };
                let (Some(a), Some(b)) = (compose(&w, &rk, caps)?, compose(&rk, &w, caps)?) else {
                    skipped += 1;
                    continue;
                };
                match same(&a, &b, caps)? {
                    Some(true) => return Ok(ZieveZhanReport { outcome: ProbeOutcome::Found((k, n, m)), hypothesis }),
                    Some(false) => {}
                    None => skipped += 1,
                }
            }
        }
    }
    Ok(ZieveZhanReport { outcome: ProbeOutcome::finish(skipped), hypothesis })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuckerRow {
    pub n: u32,
    pub first_relation: Option<Relation>,
    pub lengths_completed: usize,
    pub truncated: bool,
}

/// Enumerates `⟨R^n, Q^n⟩` to `depth` for each `n ≤ max_n`.
pub fn tucker_power_probe(
    r: &RationalMap,
    q: &RationalMap,
    max_n: u32,
    depth: usize,
    policy: &EnumPolicy,
) -> Result<Vec<TuckerRow>, SemigroupError> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let pair = r.iterate_capped(n, &policy.caps).and_then(|a| Ok((a, q.iterate_capped(n, &policy.caps)?)));
        let (rn, qn) = match pair {
            Ok(p) => p,
            Err(e) if e.is_cap() => {
                rows.push(TuckerRow { n, first_relation: None, lengths_completed: 0, truncated: true });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let e = enumerate_growth(&[rn, qn], depth, policy)?;
        rows.push(TuckerRow {
            n,
            first_relation: e.first_relation().cloned(),
            lengths_completed: e.table.lengths(),
            truncated: e.table.is_truncated(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_map;

    fn m(s: &str) -> RationalMap {
        parse_map(s).unwrap()
    }

    /// Oracle: all pairs with exact iterates, no pruning.
    fn brute_common(f: &RationalMap, g: &RationalMap, max: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for n in 1..=max {
            for k in 1..=max {
                if f.iterate(n).unwrap().equals_exact(&g.iterate(k).unwrap()).unwrap() {
                    out.push((n, k));
                }
            }
        }
        out
    }

    #[test]
    fn common_iterate_examples() {
        let caps = Caps::default();
        assert_eq!(common_iterate(&m("z^2"), &m("z^4"), 4, &caps).unwrap(), ProbeOutcome::Found((2, 1)));
        // iterates of -z^2 keep the sign, so no common iterate exists
        assert_eq!(common_iterate(&m("z^2"), &m("-z^2"), 4, &caps).unwrap(), ProbeOutcome::NotFound);
        assert!(brute_common(&m("z^2"), &m("-z^2"), 4).is_empty());
        assert_eq!(common_iterate(&m("z^2"), &m("z^2+1"), 4, &caps).unwrap(), ProbeOutcome::NotFound);
        assert!(brute_common(&m("z^2"), &m("z^2+1"), 4).is_empty());
        let dense = m("z^2").to_dense(&caps).unwrap();
        assert_eq!(common_iterate(&dense, &m("z^8"), 4, &caps).unwrap(), ProbeOutcome::Found((3, 1)));
    }

    #[test]
    fn levin_examples() {
        let caps = Caps::default();
        assert_eq!(levin_check(&m("z^2"), &m("-z^2"), 3, &caps).unwrap(), ProbeOutcome::Found((1, 1)));
        assert_eq!(levin_check(&m("z^2"), &m("z^2"), 3, &caps).unwrap(), ProbeOutcome::Found((1, 1)));
        assert_eq!(levin_check(&m("z^2"), &m("z^2+1"), 3, &caps).unwrap(), ProbeOutcome::NotFound);
        // hand check of the (1,1) identities
        let (r, q) = (m("z^2"), m("-z^2"));
        assert_eq!(r.compose(&q).unwrap(), r.iterate(2).unwrap());
        assert_eq!(q.compose(&r).unwrap(), q.iterate(2).unwrap());
    }

    #[test]
    fn zieve_zhan_examples() {
        let caps = Caps::default();
        let rep = zieve_zhan_search(&m("z^2"), &m("z^3"), 3, &caps).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::Found((1, 1, 1)));
        assert_eq!(rep.hypothesis, SharedSuperattracting::Infinity);
        assert_eq!(zieve_zhan_search(&m("z^2"), &m("-z^2"), 3, &caps).unwrap().outcome, ProbeOutcome::Found((1, 1, 1)));
        let rep = zieve_zhan_search(&m("(3/5+4/5i)*z^2"), &m("z^2"), 3, &caps).unwrap();
        assert_eq!(rep.outcome, ProbeOutcome::NotFound);
    }

    #[test]
    fn superattracting_hypothesis() {
        let caps = Caps::default();
        // z^2/(1+z) and z^3: both fix 0 with zero derivative; ∞ is not superattracting for the first
        let r = m("z^2/(z+1)");
        assert_eq!(shared_superattracting(&r, &m("z^3"), &caps).unwrap(), SharedSuperattracting::Finite);
        assert_eq!(shared_superattracting(&m("1/z^2"), &m("z+1"), &caps).unwrap(), SharedSuperattracting::NotFound);
    }

    #[test]
    fn tucker_examples() {
        let p = EnumPolicy::default();
        let rows = tucker_power_probe(&m("z^2"), &m("-z^2"), 1, 4, &p).unwrap();
        assert_eq!(rows[0].first_relation.as_ref().unwrap().left.len(), 2);
        let rows = tucker_power_probe(&m("2z"), &m("2z+1"), 3, 8, &p).unwrap();
        assert!(rows.iter().all(|r| r.first_relation.is_none() && r.lengths_completed == 8));
        let rows = tucker_power_probe(&m("z^2"), &m("z^2"), 2, 3, &p).unwrap();
        assert!(rows.iter().all(|r| r.first_relation.as_ref().unwrap().left.len() == 1));
    }

    #[test]
    fn diagonal_order() {
        let v: Vec<_> = diagonal(2).collect();
        assert_eq!(v, vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
    }
}
