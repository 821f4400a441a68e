//! Breadth-first word enumeration with fingerprint deduplication.
//!
//! Level `n` is built from the distinct maps of level `n - 1` by left
//! composition with each generator, which yields exactly the set of maps of
//! words of length `n`. Candidates are computed in parallel and then merged in
//! a fixed order, so results do not depend on the thread count.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SemigroupError, Word};
use crate::algebra::{AlgebraError, Caps, Fingerprint, FingerprintContext, RationalMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Confirmation {
    /// Checked on extra primes only; exact comparison exceeded the caps.
    FingerprintOnly,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub left: Word,
    pub right: Word,
    pub confirmed: Confirmation,
}

/// Distinct-map counts per word length, starting at length 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub counts: Vec<u64>,
    /// `false` at a length where some collision was confirmed only by fingerprints.
    pub exact: Vec<bool>,
    /// First length whose maps could not be built within the caps.
    pub truncated_at: Option<usize>,
}

impl GrowthTable {
    pub fn count(&self, length: usize) -> Option<u64> {
        length.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }

    pub fn lengths(&self) -> usize {
        self.counts.len()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_at.is_some()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("length,count,exact\n");
        for (i, (c, e)) in self.counts.iter().zip(&self.exact).enumerate() {
            s.push_str(&format!("{},{},{}\n", i + 1, c, e));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnumPolicy {
    pub caps: Caps,
    /// Keep monomials in symbolic form; when off every map is expanded densely.
    pub monomial_fast_path: bool,
    /// Relations stored (all are counted).
    pub max_relations: usize,
    pub fingerprint_seed: u64,
    pub fingerprint_primes: usize,
    pub fingerprint_points: usize,
}

impl Default for EnumPolicy {
    fn default() -> Self {
        EnumPolicy {
            caps: Caps::default(),
            monomial_fast_path: true,
            max_relations: 64,
            fingerprint_seed: 0x5eed,
            fingerprint_primes: 2,
            fingerprint_points: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub table: GrowthTable,
    pub relations: Vec<Relation>,
    pub relations_total: u64,
    /// Primes of the context that produced the result.
    pub primes: Vec<u64>,
}

impl Enumeration {
    pub fn first_relation(&self) -> Option<&Relation> {
        self.relations.first()
    }

    pub fn has_fingerprint_only(&self) -> bool {
        self.relations.iter().any(|r| r.confirmed == Confirmation::FingerprintOnly)
            || self.table.exact.iter().any(|e| !e)
    }
}

struct Entry {
    word: Word,
    map: RationalMap,
    fp: Fingerprint,
}

enum Failure {
    BadPrime(u64),
    Fatal(SemigroupError),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::BadPrime(p) => Failure::BadPrime(p),
            e => Failure::Fatal(e.into()),
        }
    }
}

pub fn enumerate_growth(
    generators: &[RationalMap],
    max_len: usize,
    policy: &EnumPolicy,
) -> Result<Enumeration, SemigroupError> {
    if generators.is_empty() {
        return Err(SemigroupError::NoGenerators);
    }
    if max_len == 0 {
        return Err(SemigroupError::Precondition("max_len must be at least 1".into()));
    }
    let gens: Vec<RationalMap> = if policy.monomial_fast_path {
        generators.iter().map(RationalMap::to_fast).collect()
    } else {
        generators.iter().map(|g| g.to_dense(&policy.caps)).collect::<Result<_, _>>()?
    };
    let mut ctx = FingerprintContext::new(policy.fingerprint_seed, policy.fingerprint_primes, policy.fingerprint_points);
    loop {
        match run(&gens, max_len, policy, &ctx) {
            Ok(e) => return Ok(e),
            Err(Failure::BadPrime(p)) => ctx = ctx.reroll_without(p)?,
            Err(Failure::Fatal(e)) => return Err(e),
        }
    }
}

#[derive(PartialEq)]
enum Same {
    Yes(Confirmation),
    No,
}

struct Confirmer<'a> {
    caps: &'a Caps,
    base: &'a FingerprintContext,
    extended: Option<FingerprintContext>,
}

impl Confirmer<'_> {
    fn same(&mut self, a: &RationalMap, b: &RationalMap) -> Result<Same, Failure> {
        match a.equals_exact_capped(b, self.caps) {
            Ok(true) => Ok(Same::Yes(Confirmation::Exact)),
            Ok(false) => Ok(Same::No),
            Err(e) if e.is_cap() => {
                let base = self.base;
                let ctx = self.extended.get_or_insert_with(|| base.extended(4));
                if ctx.fingerprint(a)? == ctx.fingerprint(b)? {
                    Ok(Same::Yes(Confirmation::FingerprintOnly))
                } else {
                    Ok(Same::No)
                }
            }
            Err(e) => Err(e.into()),
        }
    }
}

fn run(gens: &[RationalMap], max_len: usize, policy: &EnumPolicy, ctx: &FingerprintContext) -> Result<Enumeration, Failure> {
    let k = gens.len();
    let caps = &policy.caps;
    let mut table = GrowthTable::default();
    let mut relations = Vec::new();
    let mut relations_total = 0u64;
    let mut confirmer = Confirmer { caps, base: ctx, extended: None };
    // first occurrence of each fingerprint at earlier lengths
    let mut seen: HashMap<Fingerprint, (usize, usize)> = HashMap::new();
    let mut levels: Vec<Vec<Entry>> = Vec::new();

    for len in 1..=max_len {
        let candidates: Vec<Result<Entry, AlgebraError>> = match levels.last() {
            None => (0..k)
                .into_par_iter()
                .map(|i| {
                    let fp = ctx.fingerprint(&gens[i])?;
                    Ok(Entry { word: Word::letter(i), map: gens[i].clone(), fp })
                })
                .collect(),
            Some(prev) => (0..prev.len() * k)
                .into_par_iter()
                .map(|idx| {
                    let (r, i) = (&prev[idx / k], idx % k);
                    let map = gens[i].compose_capped(&r.map, caps)?;
                    let fp = ctx.fingerprint(&map)?;
                    Ok(Entry { word: r.word.prepend(i), map, fp })
                })
                .collect(),
        };
        let mut fresh: Vec<Entry> = Vec::with_capacity(candidates.len());
        let mut truncated = false;
        for c in candidates {
            match c {
                Ok(e) => fresh.push(e),
                Err(e) if e.is_cap() => truncated = true,
                Err(e) => return Err(e.into()),
            }
        }
        if truncated {
            table.truncated_at = Some(len);
            break;
        }

        let mut level: Vec<Entry> = Vec::with_capacity(fresh.len());
        let mut local: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        let mut exact = true;
        let mut record = |left: &Word, right: &Word, conf: Confirmation, exact: &mut bool| {
            relations_total += 1;
            if conf == Confirmation::FingerprintOnly {
                *exact = false;
            }
            if relations.len() < policy.max_relations {
                relations.push(Relation { left: left.clone(), right: right.clone(), confirmed: conf });
            }
        };
        'cand: for cand in fresh {
            if let Some(ids) = local.get(&cand.fp) {
                for &id in ids {
                    if let Same::Yes(conf) = confirmer.same(&cand.map, &level[id].map)? {
                        record(&cand.word, &level[id].word, conf, &mut exact);
                        continue 'cand;
                    }
                }
            }
            if let Some(&(l, id)) = seen.get(&cand.fp) {
                if let Same::Yes(conf) = confirmer.same(&cand.map, &levels[l][id].map)? {
                    record(&cand.word, &levels[l][id].word, conf, &mut exact);
                }
            }
            local.entry(cand.fp.clone()).or_default().push(level.len());
            level.push(cand);
        }
        for (id, e) in level.iter().enumerate() {
            seen.entry(e.fp.clone()).or_insert((levels.len(), id));
        }
        table.counts.push(level.len() as u64);
        table.exact.push(exact);
        levels.push(level);
    }
    Ok(Enumeration { table, relations, relations_total, primes: ctx.primes().to_vec() })
}
