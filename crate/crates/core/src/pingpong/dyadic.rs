//! Dyadic rationals `m · 2^e` and outward-rounded intervals over them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `mantissa · 2^exponent`, normalized to an odd mantissa (or zero with exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        Dyadic { m: m >> tz, e: e + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite dyadic");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.m >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((self.e + shift).clamp(-2000, 2000) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as usize)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// Rounds a rational to `prec` significant bits in the given direction.
    pub fn from_rational(r: &BigRational, prec: u32, dir: Round) -> Self {
        if r.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (r.numer(), r.denom());
        let k = prec as i64 - (n.bits() as i64 - d.bits() as i64);
        let scaled = if k >= 0 { n << k as usize } else { n.clone() };
        let den = if k >= 0 { d.clone() } else { d << (-k) as usize };
        let q = match dir {
            Round::Down => scaled.div_floor(&den),
            Round::Up => -((-scaled).div_floor(&den)),
        };
        Dyadic::new(q, -k)
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.m * &o.m, self.e + o.e)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    /// `self · 2^k`, exact.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { m: self.m.clone(), e: self.e + k }
    }

    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.m.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        let m = match dir {
            Round::Down => &self.m >> shift,
            Round::Up => -((-&self.m) >> shift),
        };
        Dyadic::new(m, self.e + shift as i64)
    }

    /// A dyadic `u ≥ sqrt(x)` (if `up`) or `0 ≤ u ≤ sqrt(x)`, with about `prec` bits.
    pub fn sqrt_bound(x: &BigRational, prec: u32, dir: Round) -> Dyadic {
        if !x.is_positive() {
            return Dyadic::zero();
        }
        // choose 4^k scaling so that the integer square root carries prec bits
        let mag = x.numer().bits() as i64 - x.denom().bits() as i64;
        let k = prec as i64 - mag / 2 + 2;
        let scaled = if k >= 0 {
            x * BigRational::from_integer(BigInt::one() << (2 * k) as usize)
        } else {
            x / BigRational::from_integer(BigInt::one() << (-2 * k) as usize)
        };
        let s = match dir {
            Round::Down => scaled.floor().to_integer().sqrt(),
            Round::Up => {
                let c = scaled.ceil().to_integer();
                let r = c.sqrt();
                if &r * &r == c {
                    r
                } else {
                    r + 1
                }
            }
        };
        Dyadic::new(s, -k)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.m, self.e)
    }
}

/// Serialized as `[mantissa, exponent]`; mantissas beyond 64 bits are decimal strings.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        match self.m.to_i64() {
            Some(m) => t.serialize_element(&m)?,
            None => t.serialize_element(&self.m.to_string())?,
        }
        t.serialize_element(&self.e)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Mant {
            Int(i64),
            Text(String),
        }
        let (m, e): (Mant, i64) = Deserialize::deserialize(d)?;
        let m = match m {
            Mant::Int(v) => BigInt::from(v),
            Mant::Text(s) => s.parse().map_err(D::Error::custom)?,
        };
        Ok(Dyadic::new(m, e))
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_f64(lo: f64, hi: f64) -> Self {
        Interval::new(Dyadic::from_f64(lo), Dyadic::from_f64(hi))
    }

    /// Outward enclosure of a rational.
    pub fn enclose(r: &BigRational, prec: u32) -> Self {
        Interval { lo: Dyadic::from_rational(r, prec, Round::Down), hi: Dyadic::from_rational(r, prec, Round::Up) }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        self.lo.to_rational() <= *x && *x <= self.hi.to_rational()
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// Largest `|x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Smallest `|x|` over the interval.
    pub fn mig(&self) -> Dyadic {
        if self.lo.signum() <= 0 && self.hi.signum() >= 0 {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    pub fn add(&self, o: &Interval, prec: u32) -> Interval {
        Interval { lo: self.lo.add(&o.lo).round(prec, Round::Down), hi: self.hi.add(&o.hi).round(prec, Round::Up) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn sub(&self, o: &Interval, prec: u32) -> Interval {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Interval, prec: u32) -> Interval {
        let p = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = p.iter().min().expect("four products").round(prec, Round::Down);
        let hi = p.iter().max().expect("four products").round(prec, Round::Up);
        Interval { lo, hi }
    }

    /// `{x^2}` without the dependency loss of `mul(self, self)`.
    pub fn square(&self, prec: u32) -> Interval {
        let (a, b) = (self.mig(), self.mag());
        Interval { lo: a.mul(&a).round(prec, Round::Down), hi: b.mul(&b).round(prec, Round::Up) }
    }

    /// `[lo, mid]` and `[mid, hi]`.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo.clone(), hi: m.clone() }, Interval { lo: m, hi: self.hi.clone() })
    }

    pub fn strictly_below(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_and_order() {
        assert_eq!(Dyadic::new(BigInt::from(12), 0), Dyadic::new(BigInt::from(3), 2));
        assert!(Dyadic::from_f64(0.75) < Dyadic::from_int(1));
        assert_eq!(Dyadic::from_f64(-2.5).to_rational(), q(-5, 2));
        assert_eq!(Dyadic::from_f64(0.1).to_f64(), 0.1);
        assert_eq!(Dyadic::from_f64(1.5).add(&Dyadic::from_f64(0.25)), Dyadic::from_f64(1.75));
    }

    #[test]
    fn rational_rounding_brackets() {
        for (n, d) in [(1, 3), (-2, 7), (22, 7), (-1, 1_000_003)] {
            let r = q(n, d);
            let lo = Dyadic::from_rational(&r, 53, Round::Down);
            let hi = Dyadic::from_rational(&r, 53, Round::Up);
            assert!(lo.to_rational() <= r && r <= hi.to_rational());
            let bound = (r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()).abs() * 2f64.powi(-51);
            assert!(hi.sub(&lo).to_f64() <= bound);
        }
    }

    #[test]
    fn sqrt_bounds() {
        for x in [q(2, 1), q(10, 1), q(1, 9), q(49, 4)] {
            let up = Dyadic::sqrt_bound(&x, 40, Round::Up).to_rational();
            let down = Dyadic::sqrt_bound(&x, 40, Round::Down).to_rational();
            assert!(&down * &down <= x && x <= &up * &up);
        }
        assert_eq!(Dyadic::sqrt_bound(&q(9, 4), 10, Round::Up), Dyadic::from_f64(1.5));
    }

    #[test]
    fn interval_ops_contain() {
        let a = Interval::from_f64(-1.0, 2.0);
        let b = Interval::from_f64(0.5, 3.0);
        let p = a.mul(&b, 20);
        assert_eq!((p.lo.to_f64(), p.hi.to_f64()), (-3.0, 6.0));
        let s = a.square(20);
        assert_eq!((s.lo.to_f64(), s.hi.to_f64()), (0.0, 4.0));
        let third = Interval::enclose(&q(1, 3), 30);
        assert!(third.contains_rational(&q(1, 3)));
    }

    #[test]
    fn serde_pairs() {
        let d = Dyadic::new(BigInt::from(5), -3);
        assert_eq!(serde_json::to_string(&d).unwrap(), "[5,-3]");
        let big = Dyadic::new(BigInt::from(3).pow(50), 1);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Dyadic>(&s).unwrap(), big);
        assert_eq!(serde_json::from_str::<Dyadic>("[5,-3]").unwrap(), d);
    }
}
