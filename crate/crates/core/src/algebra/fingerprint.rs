//! Modular multi-point evaluation fingerprints.
//!
//! Each context prime `p ≡ 1 (mod 4)` carries a square root `r` of `-1`, so
//! `a + b i ↦ a + b r` is a ring map from the `p`-integral part of ℚ(i) to
//! `F_p`. A rational map is fingerprinted by its projective values
//! `(N(x) : D(x))` at a few fixed points per prime. Equal maps always get
//! equal fingerprints; two distinct maps of degrees `d1, d2` collide at one
//! point with probability at most `(d1 + d2) / p`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraError, GaussianRational, MonoCoef, Poly, RationalMap};

const PRIME_LOW: u64 = 1 << 60;
const PRIME_HIGH: u64 = 1 << 61;

#[derive(Clone, Debug)]
struct PrimeSlot {
    p: u64,
    sqrt_neg_one: u64,
    points: Vec<u64>,
}

/// Shared, read-only evaluation context.
#[derive(Clone, Debug)]
pub struct FingerprintContext {
    seed: u64,
    slots: Arc<[PrimeSlot]>,
    excluded: Vec<u64>,
    primes: Arc<[u64]>,
    points_per_prime: usize,
}

/// Projective residues `(num, den)` per (prime, point), normalized so that
/// `den = 1` whenever it is invertible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub primes: Arc<[u64]>,
    pub residues: Vec<(u64, u64)>,
}

impl Default for FingerprintContext {
    fn default() -> Self {
        Self::new(0x5eed, 2, 4)
    }
}

impl FingerprintContext {
    /// `m` primes, `t` evaluation points per prime, derived deterministically from `seed`.
    pub fn new(seed: u64, m: usize, t: usize) -> Self {
        Self::build(seed, m, t, Vec::new())
    }

    fn build(seed: u64, m: usize, t: usize, excluded: Vec<u64>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut slots = Vec::with_capacity(m);
        while slots.len() < m {
            let p = random_prime_1_mod_4(&mut rng);
            if excluded.contains(&p) || slots.iter().any(|s: &PrimeSlot| s.p == p) {
                continue;
            }
            let r = sqrt_neg_one(p, &mut rng);
            let points = (0..t).map(|_| rng.gen_range(2..p)).collect();
            slots.push(PrimeSlot { p, sqrt_neg_one: r, points });
        }
        let primes: Arc<[u64]> = slots.iter().map(|s| s.p).collect();
        FingerprintContext { seed, slots: slots.into(), excluded, primes, points_per_prime: t }
    }

    /// Same seed lineage with `extra` additional primes, for confirming
    /// collisions that cannot be checked exactly.
    pub fn extended(&self, extra: usize) -> Self {
        let mut ctx = Self::build(
            self.seed ^ 0x9e37_79b9_7f4a_7c15,
            self.slots.len() + extra,
            self.points_per_prime,
            self.excluded.clone(),
        );
        ctx.seed = self.seed;
        ctx
    }

    /// Context that never uses `bad`.
    pub fn reroll_without(&self, bad: u64) -> Result<Self, AlgebraError> {
        let mut excluded = self.excluded.clone();
        excluded.push(bad);
        if excluded.len() > 64 {
            return Err(AlgebraError::PrimesExhausted);
        }
        Ok(Self::build(self.seed.wrapping_add(excluded.len() as u64), self.slots.len(), self.points_per_prime, excluded))
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn points(&self) -> Vec<Vec<u64>> {
        self.slots.iter().map(|s| s.points.clone()).collect()
    }

    pub fn points_per_prime(&self) -> usize {
        self.points_per_prime
    }

    pub fn fingerprint(&self, f: &RationalMap) -> Result<Fingerprint, AlgebraError> {
        let mut residues = Vec::with_capacity(self.slots.len() * self.points_per_prime);
        for slot in self.slots.iter() {
            let p = slot.p;
            if let Some(m) = f.as_fast_monomial() {
                let c = mono_coef_mod(&m.coef, slot)?;
                for &x in &slot.points {
                    residues.push((mul_mod(c, pow_mod(x, m.degree, p), p), 1));
                }
            } else {
                let num = poly_mod(&f.num()?, slot)?;
                let den = poly_mod(&f.den(), slot)?;
                for &x in &slot.points {
                    residues.push(projective(horner_mod(&num, x, p), horner_mod(&den, x, p), p));
                }
            }
        }
        Ok(Fingerprint { primes: self.primes.clone(), residues })
    }

    /// Upper bound on the probability that two distinct maps whose degrees
    /// sum to at most `degree_sum` share a fingerprint.
    pub fn collision_bound(&self, degree_sum: u64) -> f64 {
        let p_min = self.primes.iter().copied().min().unwrap_or(PRIME_LOW) as f64;
        collision_bound(degree_sum, p_min, self.points_per_prime as u32, self.slots.len() as u32)
    }
}

/// `(D / p)^(t·m)`
pub fn collision_bound(degree: u64, p: f64, points: u32, primes: u32) -> f64 {
    (degree as f64 / p).min(1.0).powi((points * primes) as i32)
}

fn projective(n: u64, d: u64, p: u64) -> (u64, u64) {
    if d != 0 {
        (mul_mod(n, inv_mod(d, p), p), 1)
    } else if n != 0 {
        (1, 0)
    } else {
        (0, 0)
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn ratio_mod(r: &BigRational, p: u64) -> Result<u64, AlgebraError> {
    let den = bigint_mod(r.denom(), p);
    if den == 0 {
        return Err(AlgebraError::BadPrime(p));
    }
    Ok(mul_mod(bigint_mod(r.numer(), p), inv_mod(den, p), p))
}

fn gauss_mod(c: &GaussianRational, slot: &PrimeSlot) -> Result<u64, AlgebraError> {
    let p = slot.p;
    let re = ratio_mod(&c.re, p)?;
    let im = ratio_mod(&c.im, p)?;
    Ok(add_mod(re, mul_mod(im, slot.sqrt_neg_one, p), p))
}

fn mono_coef_mod(c: &MonoCoef, slot: &PrimeSlot) -> Result<u64, AlgebraError> {
    let p = slot.p;
    let mut acc = pow_mod(slot.sqrt_neg_one, c.unit() as u64, p);
    for (b, e) in c.factors() {
        acc = mul_mod(acc, pow_mod(gauss_mod(b, slot)?, *e, p), p);
    }
    Ok(acc)
}

fn poly_mod(poly: &Poly, slot: &PrimeSlot) -> Result<Vec<u64>, AlgebraError> {
    poly.coeffs().iter().map(|c| gauss_mod(c, slot)).collect()
}

fn horner_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn random_prime_1_mod_4(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let c = (rng.gen_range(PRIME_LOW..PRIME_HIGH) & !3) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

fn sqrt_neg_one(p: u64, rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let n = rng.gen_range(2..p - 1);
        let c = pow_mod(n, (p - 1) / 4, p);
        if mul_mod(c, c, p) == p - 1 {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_map;

    #[test]
    fn primes_are_valid() {
        let ctx = FingerprintContext::default();
        for slot in ctx.slots.iter() {
            assert!(is_prime_u64(slot.p));
            assert_eq!(slot.p % 4, 1);
            assert!(slot.p >= PRIME_LOW && slot.p < PRIME_HIGH);
            assert_eq!(mul_mod(slot.sqrt_neg_one, slot.sqrt_neg_one, slot.p), slot.p - 1);
        }
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn equal_maps_equal_fingerprints() {
        let ctx = FingerprintContext::default();
        let f = |s: &str| ctx.fingerprint(&parse_map(s).unwrap()).unwrap();
        assert_eq!(f("z^2"), f("(2z^2)/2"));
        assert_ne!(f("z^2"), f("z^2+1"));
        let sq = parse_map("z^2").unwrap();
        let word = sq.compose(&sq).unwrap();
        assert_eq!(ctx.fingerprint(&word).unwrap(), f("z^4"));
    }

    #[test]
    fn representation_independent() {
        let ctx = FingerprintContext::default();
        let m = parse_map("(3/5+4/5i)*z^3").unwrap();
        assert!(m.is_fast_monomial());
        let d = m.to_dense(&Default::default()).unwrap();
        assert_eq!(ctx.fingerprint(&m).unwrap(), ctx.fingerprint(&d).unwrap());
        let r = parse_map("(z+i)/(3z^2-1/2)").unwrap();
        assert_eq!(ctx.fingerprint(&r).unwrap(), ctx.fingerprint(&r.clone()).unwrap());
    }

    #[test]
    fn bound_for_defaults() {
        let ctx = FingerprintContext::default();
        // D = 4 (two quadratics), t = 4, m = 2: (4 / 2^60)^8 < 1e-130
        let b = ctx.collision_bound(4);
        assert!(b > 0.0 && b < 1e-130, "{b}");
        assert_eq!(collision_bound(1 << 20, 2f64.powi(60), 4, 2), (2f64.powi(-40)).powi(8));
    }

    #[test]
    fn bad_prime_detected_and_rerolled() {
        let ctx = FingerprintContext::new(7, 1, 2);
        let p = ctx.primes()[0];
        let f = RationalMap::polynomial(Poly::new(vec![
            GaussianRational::new(BigRational::new(1.into(), BigInt::from(p)), BigRational::from_integer(0.into())),
            GaussianRational::one(),
        ]))
        .unwrap();
        assert_eq!(ctx.fingerprint(&f).unwrap_err(), AlgebraError::BadPrime(p));
        let ctx2 = ctx.reroll_without(p).unwrap();
        assert!(!ctx2.primes().contains(&p));
        assert!(ctx2.fingerprint(&f).is_ok());
    }
}
