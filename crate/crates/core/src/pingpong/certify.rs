//! Preimage-containment proofs by adaptive subdivision, and ping-pong
//! certificates built from them.
//!
//! To show `P^{-1}(D) ⊆ N` it suffices to cover `{|z| < R}` by the square
//! `[-R, R]^2`, where `|z| ≥ R` forces `|P(z)| > sup_D |w|`, and to classify
//! every leaf of a subdivision of that square as escaping (`|z| ≥ R` on the
//! leaf), inside `N`, or excluded (`P(leaf)` misses the closed disk).
//!
//! Proofs are stored as a preorder bit string (`1` split, `0` leaf) plus one
//! reason letter per leaf, so replay never searches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Interval};
use super::eval::{tight_escape_radius, verify_escape_radius, Enclosure, DEFAULT_PRECISION};
use super::geometry::{ComplexBox, Disk, Region};
use super::PingPongError;
use crate::algebra::{CanonicalMap, Poly, RationalMap};

const MAX_PRECISION: u32 = 1024;
const PARALLEL_DEPTH: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentProof {
    /// Root square is `[-R, R]^2`.
    pub escape_radius: Dyadic,
    /// Bound `M ≥ sup_D |w|` the radius was verified against.
    pub modulus_bound: Dyadic,
    pub tree: String,
    /// `E` escape, `N` inside the region, `X` excluded, `U` undecided.
    pub leaves: String,
    pub base_precision: u32,
    /// `(leaf index, precision)` for excluded leaves proved above the base precision.
    pub raised_precision: Vec<(u32, u32)>,
    pub leaf_count: u64,
    pub max_depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContainmentStatus {
    Certified,
    Inconclusive { undecided: Vec<ComplexBox> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub status: ContainmentStatus,
    pub proof: ContainmentProof,
}

impl Containment {
    pub fn is_certified(&self) -> bool {
        self.status == ContainmentStatus::Certified
    }
}

struct Ctx<'a> {
    disk: &'a Disk,
    region: &'a Region,
    escape_sq: Dyadic,
    base: Enclosure,
    poly: &'a Poly,
    depth_cap: u32,
}

enum Leaf {
    Escape,
    Inside,
    Excluded(u32),
}

impl Ctx<'_> {
    fn escapes(&self, b: &ComplexBox) -> bool {
        let z = Dyadic::zero();
        b.min_dist_sq(&z, &z) >= self.escape_sq
    }

    /// `Err(radius)` of the enclosure when the image may meet the disk.
    fn excluded(&self, b: &ComplexBox, enc: &Enclosure) -> Result<(), f64> {
        let v = enc.centered(b);
        let dist = v.center.min_dist_sq(&self.disk.center_re, &self.disk.center_im);
        let reach = self.disk.radius.add(&v.radius);
        if dist > reach.mul(&reach) {
            Ok(())
        } else {
            Err(v.radius.to_f64())
        }
    }

    fn classify(&self, b: &ComplexBox, prec: u32) -> Result<Leaf, f64> {
        if self.escapes(b) {
            return Ok(Leaf::Escape);
        }
        if self.region.covers(b) {
            return Ok(Leaf::Inside);
        }
        let r = if prec == self.base.precision() {
            self.excluded(b, &self.base)
        } else {
            self.excluded(b, &Enclosure::new(self.poly, prec))
        };
        r.map(|_| Leaf::Excluded(prec))
    }
}

#[derive(Default)]
struct Subtree {
    tree: Vec<u8>,
    leaves: Vec<u8>,
    raised: Vec<(u32, u32)>,
    undecided: Vec<ComplexBox>,
    max_depth: u32,
}

impl Subtree {
    fn leaf(kind: u8, depth: u32) -> Self {
        Subtree { tree: vec![b'0'], leaves: vec![kind], max_depth: depth, ..Default::default() }
    }

    fn join(a: Subtree, b: Subtree) -> Self {
        let offset = a.leaves.len() as u32;
        let mut tree = Vec::with_capacity(1 + a.tree.len() + b.tree.len());
        tree.push(b'1');
        tree.extend(a.tree);
        tree.extend(b.tree);
        let mut leaves = a.leaves;
        leaves.extend(b.leaves);
        let mut raised = a.raised;
        raised.extend(b.raised.into_iter().map(|(i, p)| (i + offset, p)));
        let mut undecided = a.undecided;
        undecided.extend(b.undecided);
        Subtree { tree, leaves, raised, undecided, max_depth: a.max_depth.max(b.max_depth) }
    }
}

fn search(ctx: &Ctx, b: ComplexBox, depth: u32, prec: u32, parent_width: f64) -> Subtree {
    match ctx.classify(&b, prec) {
        Ok(Leaf::Escape) => Subtree::leaf(b'E', depth),
        Ok(Leaf::Inside) => Subtree::leaf(b'N', depth),
        Ok(Leaf::Excluded(p)) => {
            let mut s = Subtree::leaf(b'X', depth);
            if p != DEFAULT_PRECISION {
                s.raised.push((0, p));
            }
            s
        }
        Err(width) => {
            if depth >= ctx.depth_cap {
                let mut s = Subtree::leaf(b'U', depth);
                s.undecided.push(b);
                return s;
            }
            // no shrinkage since the parent: rounding dominates, so raise precision
            let next = if depth > 2 && width >= 0.95 * parent_width { (prec * 2).min(MAX_PRECISION) } else { prec };
            let (l, r) = b.split();
            let (a, c) = if depth < PARALLEL_DEPTH {
                rayon::join(|| search(ctx, l, depth + 1, next, width), || search(ctx, r, depth + 1, next, width))
            } else {
                (search(ctx, l, depth + 1, next, width), search(ctx, r, depth + 1, next, width))
            };
            Subtree::join(a, c)
        }
    }
}

fn context<'a>(p: &'a Poly, disk: &'a Disk, region: &'a Region, depth_cap: u32, radius: &Dyadic) -> Ctx<'a> {
    Ctx {
        disk,
        region,
        escape_sq: radius.mul(radius),
        base: Enclosure::new(p, DEFAULT_PRECISION),
        poly: p,
        depth_cap,
    }
}

/// Subdivides `[-R, R]^2` until every leaf escapes, lies in `N`, or maps
/// off the closed disk, or until `depth_cap` splits along some branch.
pub fn certify_preimage_containment(p: &Poly, disk: &Disk, region: &Region, depth_cap: u32) -> Result<Containment, PingPongError> {
    if p.deg() < 1 {
        return Err(PingPongError::Degree(p.deg()));
    }
    let m = disk.modulus_bound();
    let radius = tight_escape_radius(p, &m);
    let ctx = context(p, disk, region, depth_cap, &radius);
    let sub = search(&ctx, ComplexBox::square(&radius), 0, DEFAULT_PRECISION, f64::INFINITY);
    let status = if sub.undecided.is_empty() {
        ContainmentStatus::Certified
    } else {
        ContainmentStatus::Inconclusive { undecided: sub.undecided }
    };
    let proof = ContainmentProof {
        escape_radius: radius,
        modulus_bound: m,
        leaf_count: sub.leaves.len() as u64,
        tree: String::from_utf8(sub.tree).expect("ascii"),
        leaves: String::from_utf8(sub.leaves).expect("ascii"),
        base_precision: DEFAULT_PRECISION,
        raised_precision: sub.raised,
        max_depth: sub.max_depth,
    };
    Ok(Containment { status, proof })
}

/// Re-checks a stored proof leaf by leaf without searching.
pub fn replay_containment(p: &Poly, disk: &Disk, region: &Region, proof: &ContainmentProof) -> bool {
    // M must bound sup_D |w|: M - r ≥ |c|
    let slack = proof.modulus_bound.sub(&disk.radius);
    let c2 = disk.center_re.mul(&disk.center_re).add(&disk.center_im.mul(&disk.center_im));
    if slack.is_negative() || slack.mul(&slack) < c2 {
        return false;
    }
    if !verify_escape_radius(p, &proof.modulus_bound, &proof.escape_radius) {
        return false;
    }
    let ctx = context(p, disk, region, u32::MAX, &proof.escape_radius);
    let tree = proof.tree.as_bytes();
    let leaves = proof.leaves.as_bytes();
    if leaves.len() as u64 != proof.leaf_count {
        return false;
    }
    let mut prec_of = std::collections::HashMap::new();
    for &(i, p) in &proof.raised_precision {
        prec_of.insert(i, p.min(MAX_PRECISION));
    }
    // explicit stack of boxes in preorder
    let mut stack = vec![ComplexBox::square(&proof.escape_radius)];
    let (mut ti, mut li) = (0usize, 0usize);
    let mut enclosures: Vec<Enclosure> = Vec::new();
    while let Some(b) = stack.pop() {
        match tree.get(ti) {
            Some(b'1') => {
                ti += 1;
                let (l, r) = b.split();
                stack.push(r);
                stack.push(l);
            }
            Some(b'0') => {
                ti += 1;
                let ok = match leaves.get(li) {
                    Some(b'E') => ctx.escapes(&b),
                    Some(b'N') => region.covers(&b),
                    Some(b'X') => {
                        let prec = prec_of.get(&(li as u32)).copied().unwrap_or(proof.base_precision);
                        if !enclosures.iter().any(|e| e.precision() == prec) {
                            enclosures.push(Enclosure::new(p, prec));
                        }
                        let enc = enclosures.iter().find(|e| e.precision() == prec).expect("inserted");
                        ctx.excluded(&b, enc).is_ok()
                    }
                    _ => false,
                };
                if !ok {
                    return false;
                }
                li += 1;
            }
            _ => return false,
        }
    }
    ti == tree.len() && li == leaves.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailedCheck {
    /// Some boxes of `N1` and `N2` touch or overlap.
    Disjointness,
    /// Some box of `N1 ∪ N2` reaches the boundary of `D` or beyond.
    InsideDisk,
    /// `P_i^{-1}(D) ⊆ N_i` was not proved (index 1 or 2).
    Containment(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Free,
    Inconclusive { failed: Vec<FailedCheck>, witnesses: Vec<ComplexBox> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PingPongCertificate {
    pub maps: [CanonicalMap; 2],
    pub disk: Disk,
    pub n1: Region,
    pub n2: Region,
    pub proof1: ContainmentProof,
    pub proof2: ContainmentProof,
    pub leaf_count: u64,
    pub max_depth: u32,
    pub verdict: Verdict,
}

impl PingPongCertificate {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }

    pub fn escape_radii(&self) -> (&Dyadic, &Dyadic) {
        (&self.proof1.escape_radius, &self.proof2.escape_radius)
    }
}

fn inside_failures(disk: &Disk, regions: [&Region; 2]) -> Vec<ComplexBox> {
    regions.iter().flat_map(|r| r.boxes.iter()).filter(|b| !disk.strictly_contains(b)).cloned().collect()
}

/// Checks disjointness, strict inclusion in `D` and both containments.
/// `Free` means `⟨P1, P2⟩` is a free semigroup of rank 2: a word's first
/// letter is read off from which `N_i` contains the preimage of `D`.
pub fn certify_pingpong(
    p1: &Poly,
    p2: &Poly,
    disk: &Disk,
    n1: &Region,
    n2: &Region,
    depth_cap: u32,
) -> Result<PingPongCertificate, PingPongError> {
    for p in [p1, p2] {
        if p.deg() < 2 {
            return Err(PingPongError::Degree(p.deg()));
        }
    }
    let mut failed = Vec::new();
    let mut witnesses = Vec::new();
    if n1.is_empty() || n2.is_empty() {
        failed.push(FailedCheck::Disjointness);
    }
    if let Some((a, b)) = n1.strictly_disjoint(n2) {
        failed.push(FailedCheck::Disjointness);
        witnesses.extend([a, b]);
    }
    let outside = inside_failures(disk, [n1, n2]);
    if !outside.is_empty() {
        failed.push(FailedCheck::InsideDisk);
        witnesses.extend(outside.into_iter().take(8));
    }
    let (c1, c2) = rayon::join(
        || certify_preimage_containment(p1, disk, n1, depth_cap),
        || certify_preimage_containment(p2, disk, n2, depth_cap),
    );
    let (c1, c2) = (c1?, c2?);
    for (i, c) in [(1u8, &c1), (2, &c2)] {
        if let ContainmentStatus::Inconclusive { undecided } = &c.status {
            failed.push(FailedCheck::Containment(i));
            witnesses.extend(undecided.iter().take(8).cloned());
        }
    }
    let verdict = if failed.is_empty() { Verdict::Free } else { Verdict::Inconclusive { failed, witnesses } };
    Ok(PingPongCertificate {
        maps: [canonical(p1)?, canonical(p2)?],
        disk: disk.clone(),
        n1: n1.clone(),
        n2: n2.clone(),
        leaf_count: c1.proof.leaf_count + c2.proof.leaf_count,
        max_depth: c1.proof.max_depth.max(c2.proof.max_depth),
        proof1: c1.proof,
        proof2: c2.proof,
        verdict,
    })
}

fn canonical(p: &Poly) -> Result<CanonicalMap, PingPongError> {
    Ok(RationalMap::polynomial(p.clone())?.to_canonical()?)
}

/// Verifies a certificate from its own data. Returns `Ok(true)` only for a
/// `Free` verdict whose every check re-verifies.
pub fn replay_certificate(cert: &PingPongCertificate) -> Result<bool, PingPongError> {
    if !cert.is_free() {
        return Ok(false);
    }
    let p1 = RationalMap::from_canonical(&cert.maps[0])?.as_poly()?;
    let p2 = RationalMap::from_canonical(&cert.maps[1])?.as_poly()?;
    if p1.deg() < 2 || p2.deg() < 2 || cert.n1.is_empty() || cert.n2.is_empty() {
        return Ok(false);
    }
    if cert.n1.strictly_disjoint(&cert.n2).is_some() || !inside_failures(&cert.disk, [&cert.n1, &cert.n2]).is_empty() {
        return Ok(false);
    }
    let (a, b) = rayon::join(
        || replay_containment(&p1, &cert.disk, &cert.n1, &cert.proof1),
        || replay_containment(&p2, &cert.disk, &cert.n2, &cert.proof2),
    );
    Ok(a && b)
}

/// Options for building `N_i` from numeric preimages.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AutoOptions {
    /// Disk radii tried in order (center 0).
    pub radii: Vec<f64>,
    /// Grid cells per escape radius.
    pub cells_per_radius: u32,
    /// Dilation of the sampled preimage, as a fraction of the escape radius.
    pub pad_fraction: f64,
    pub rings: usize,
    pub spokes: usize,
    pub depth_cap: u32,
}

impl Default for AutoOptions {
    fn default() -> Self {
        AutoOptions {
            radii: vec![4.0, 5.0, 3.5, 4.5, 6.0, 8.0, 3.0, 2.5, 2.0, 12.0, 1.5, 16.0, 1.0, 0.5],
            cells_per_radius: 48,
            pad_fraction: 0.04,
            rings: 32,
            spokes: 128,
            depth_cap: 14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutoAttempt {
    pub radius: f64,
    pub failed: Vec<FailedCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutoResult {
    /// First `Free` certificate, else the attempt at the first radius.
    pub certificate: PingPongCertificate,
    pub attempts: Vec<AutoAttempt>,
}

/// Searches center-0 disks from `opts.radii`. For each radius, `N_i` is the
/// union of grid cells within the padding distance of sampled preimages of
/// `D`. Cheap checks run first; containment runs only when they pass.
pub fn certify_auto(p1: &Poly, p2: &Poly, opts: &AutoOptions) -> Result<AutoResult, PingPongError> {
    let mut attempts = Vec::new();
    let mut first: Option<PingPongCertificate> = None;
    for &r in &opts.radii {
        let disk = Disk::from_f64(0.0, 0.0, r);
        let n1 = auto_region(p1, &disk, opts)?;
        let n2 = auto_region(p2, &disk, opts)?;
        let cheap_ok = n1.strictly_disjoint(&n2).is_none() && inside_failures(&disk, [&n1, &n2]).is_empty();
        let cert = if cheap_ok || first.is_none() {
            Some(certify_pingpong(p1, p2, &disk, &n1, &n2, if cheap_ok { opts.depth_cap } else { opts.depth_cap.min(8) })?)
        } else {
            None
        };
        let failed = match &cert {
            Some(c) => match &c.verdict {
                Verdict::Free => Vec::new(),
                Verdict::Inconclusive { failed, .. } => failed.clone(),
            },
            None => {
                let mut f = Vec::new();
                if n1.strictly_disjoint(&n2).is_some() {
                    f.push(FailedCheck::Disjointness);
                }
                if !inside_failures(&disk, [&n1, &n2]).is_empty() {
                    f.push(FailedCheck::InsideDisk);
                }
                f
            }
        };
        attempts.push(AutoAttempt { radius: r, failed: failed.clone() });
        if let Some(c) = cert {
            if c.is_free() {
                return Ok(AutoResult { certificate: c, attempts });
            }
            if first.is_none() {
                first = Some(c);
            }
        }
    }
    let certificate = first.ok_or(PingPongError::NoRadii)?;
    Ok(AutoResult { certificate, attempts })
}

/// Grid cells covering numeric preimages of a polar sample of `D`, dilated,
/// merged into horizontal runs.
pub fn auto_region(p: &Poly, disk: &Disk, opts: &AutoOptions) -> Result<Region, PingPongError> {
    use crate::measure::roots::{preimages, RootConfig};
    use num_complex::Complex64;
    use std::collections::BTreeSet;

    let escape = tight_escape_radius(p, &disk.modulus_bound()).to_f64();
    let cell_exp = (escape / opts.cells_per_radius.max(1) as f64).log2().floor() as i32;
    let h = 2f64.powi(cell_exp);
    let pad = ((opts.pad_fraction * escape) / h).ceil() as i64;
    let coeffs = p.to_c64();
    let (cre, cim, r) = (disk.center_re.to_f64(), disk.center_im.to_f64(), disk.radius.to_f64());
    let cfg = RootConfig::default();

    let samples: Vec<Complex64> = (0..=opts.rings)
        .flat_map(|k| {
            let rho = r * k as f64 / opts.rings.max(1) as f64;
            let n = if k == 0 { 1 } else { (opts.spokes * k / opts.rings.max(1)).max(8) };
            (0..n).map(move |j| Complex64::new(cre, cim) + Complex64::from_polar(rho, std::f64::consts::TAU * j as f64 / n as f64))
        })
        .collect();
    let roots: Vec<Vec<Complex64>> = samples
        .par_chunks(64)
        .map(|chunk| {
            let mut warm: Option<Vec<Complex64>> = None;
            let mut out = Vec::new();
            for &w in chunk {
                if let Ok(z) = preimages(&coeffs, w, warm.as_deref(), &cfg) {
                    out.extend(z.iter().copied());
                    warm = Some(z);
                }
            }
            out
        })
        .collect();
    let mut cells: BTreeSet<(i64, i64)> = BTreeSet::new();
    for z in roots.into_iter().flatten() {
        let (i, j) = ((z.re / h).floor() as i64, (z.im / h).floor() as i64);
        for di in -pad..=pad {
            for dj in -pad..=pad {
                cells.insert((j + dj, i + di));
            }
        }
    }
    // runs of consecutive cells in each row
    let mut boxes = Vec::new();
    let mut iter = cells.into_iter().peekable();
    while let Some((row, start)) = iter.next() {
        let mut end = start;
        while let Some(&(r2, c2)) = iter.peek() {
            if r2 == row && c2 == end + 1 {
                end = c2;
                iter.next();
            } else {
                break;
            }
        }
        let cell = |k: i64| Dyadic::from_int(k).shl(cell_exp as i64);
        boxes.push(ComplexBox::new(
            Interval::new(cell(start), cell(end + 1)),
            Interval::new(cell(row), cell(row + 1)),
        ));
    }
    Ok(Region::new(boxes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    fn region(bs: &[(f64, f64, f64, f64)]) -> Region {
        Region::new(bs.iter().map(|&(a, b, c, d)| ComplexBox::from_f64(a, b, c, d)).collect())
    }

    #[test]
    fn square_map_small_disk() {
        let c = certify_preimage_containment(&p(&[0, 0, 1]), &Disk::from_f64(0.0, 0.0, 0.25), &region(&[(-0.6, 0.6, -0.6, 0.6)]), 16).unwrap();
        assert!(c.is_certified());
        assert!(replay_containment(&p(&[0, 0, 1]), &Disk::from_f64(0.0, 0.0, 0.25), &region(&[(-0.6, 0.6, -0.6, 0.6)]), &c.proof));
    }

    #[test]
    fn false_containment_is_not_certified() {
        let c = certify_preimage_containment(&p(&[0, 0, 1]), &Disk::from_f64(0.0, 0.0, 1.0), &region(&[(-0.5, 0.5, -0.5, 0.5)]), 10).unwrap();
        assert!(!c.is_certified());
    }

    #[test]
    fn two_component_preimage() {
        let poly = p(&[6, 0, 1]);
        let disk = Disk::from_f64(0.0, 0.0, 3.0);
        let s6 = 6f64.sqrt();
        // preimage of |w| ≤ 3 spans i·[√3, 3]; half-width 0.5 boxes are too small
        let small = region(&[(-0.5, 0.5, s6 - 0.5, s6 + 0.5), (-0.5, 0.5, -s6 - 0.5, -s6 + 0.5)]);
        assert!(!certify_preimage_containment(&poly, &disk, &small, 12).unwrap().is_certified());
        let big = region(&[(-0.8, 0.8, s6 - 0.8, s6 + 0.8), (-0.8, 0.8, -s6 - 0.8, -s6 + 0.8)]);
        let c = certify_preimage_containment(&poly, &disk, &big, 16).unwrap();
        assert!(c.is_certified(), "{:?}", c.proof.max_depth);
        assert!(replay_containment(&poly, &disk, &big, &c.proof));
    }

    #[test]
    fn tampered_proof_rejected() {
        let poly = p(&[0, 0, 1]);
        let disk = Disk::from_f64(0.0, 0.0, 0.25);
        let n = region(&[(-0.6, 0.6, -0.6, 0.6)]);
        let c = certify_preimage_containment(&poly, &disk, &n, 16).unwrap();
        let mut bad = c.proof.clone();
        bad.leaves = bad.leaves.replace('N', "X");
        assert!(!replay_containment(&poly, &disk, &n, &bad));
        let mut bad = c.proof.clone();
        bad.escape_radius = Dyadic::from_f64(0.25);
        assert!(!replay_containment(&poly, &disk, &n, &bad));
        // the preimage is |z| ≤ 1/2, so the proof cannot transfer to a smaller region
        assert!(!replay_containment(&poly, &disk, &region(&[(-0.3, 0.3, -0.3, 0.3)]), &c.proof));
    }

    #[test]
    fn auto_proves_the_shifted_pair() {
        let res = certify_auto(&p(&[6, 0, 1]), &p(&[-6, 0, 1]), &AutoOptions::default()).unwrap();
        let cert = &res.certificate;
        assert!(cert.is_free(), "{:?}", res.attempts);
        assert!(cert.max_depth <= 14);
        assert!(replay_certificate(cert).unwrap());
        let json = serde_json::to_string(cert).unwrap();
        let back: PingPongCertificate = serde_json::from_str(&json).unwrap();
        assert!(replay_certificate(&back).unwrap());
    }

    #[test]
    fn sign_pair_fails_disjointness() {
        let res = certify_auto(&p(&[0, 0, 1]), &p(&[0, 0, -1]), &AutoOptions::default()).unwrap();
        match &res.certificate.verdict {
            Verdict::Inconclusive { failed, .. } => assert!(failed.contains(&FailedCheck::Disjointness)),
            Verdict::Free => panic!("equal preimages cannot be separated"),
        }
        assert!(res.attempts.iter().all(|a| a.failed.contains(&FailedCheck::Disjointness)));
        assert!(!replay_certificate(&res.certificate).unwrap());
    }
}
