//! Exact Gaussian rationals `a + b i` with `a, b` in ℚ.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// An element of ℚ(i). Both parts are kept in lowest terms with a positive
/// denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(re_num/re_den) + (im_num/im_den) i`
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// Exact conversion of a finite double (every finite f64 is a dyadic rational).
    pub fn from_f64_exact(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, exact.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Exponent `k` with `self == i^k`, if `self` is one of the four units
    /// `1, i, -1, -i` (the only roots of unity in ℚ(i)).
    pub fn unit_root_exponent(&self) -> Option<u8> {
        let one = BigRational::one();
        let zero = BigRational::zero();
        match (&self.re, &self.im) {
            (r, m) if *r == one && *m == zero => Some(0),
            (r, m) if *r == zero && *m == one => Some(1),
            (r, m) if *r == -one.clone() && *m == zero => Some(2),
            (r, m) if *r == zero && *m == -one.clone() => Some(3),
            _ => None,
        }
    }

    /// `i^k`
    pub fn unit(k: u8) -> Self {
        match k % 4 {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    /// Splits a nonzero value as `i^k * b` with `b` in the sector
    /// `re > 0, im >= 0`.
    pub fn associate_normal(&self) -> (u8, Self) {
        debug_assert!(!self.is_zero());
        let mut b = self.clone();
        let mut k = 0u8;
        // multiplying b by -i rotates it clockwise; the unit factor gains +1.
        while !(b.re.is_positive() && !b.im.is_negative()) {
            b = Self::new(b.im.clone(), -b.re.clone());
            k += 1;
        }
        (k % 4, b)
    }

    /// Total number of bits in the numerators and denominators.
    pub fn bit_size(&self) -> u64 {
        self.re.numer().bits()
            + self.re.denom().bits()
            + self.im.numer().bits()
            + self.im.denom().bits()
    }

    /// Largest bit length of any single rational component.
    pub fn max_component_bits(&self) -> u64 {
        let r = self.re.numer().bits().max(self.re.denom().bits());
        let i = self.im.numer().bits().max(self.im.denom().bits());
        r.max(i)
    }

    /// Exact power by repeated squaring. `bit_cap` bounds the per-component
    /// size of the result; exceeding it is a capped-resource error.
    pub fn pow_capped(&self, mut e: u64, bit_cap: u64) -> Result<Self, AlgebraError> {
        if e == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.unit_root_exponent().is_none() {
            let estimate = (self.max_component_bits().saturating_sub(1)).saturating_mul(e);
            if estimate > bit_cap {
                return Err(AlgebraError::CapExceeded {
                    resource: "coefficient bits",
                    limit: bit_cap,
                    requested: estimate,
                });
            }
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Canonical serialized form `"re_num/re_den+im_num/im_den i"`.
    pub fn canonical_string(&self) -> String {
        format!(
            "{}/{}+{}/{} i",
            self.re.numer(),
            self.re.denom(),
            self.im.numer(),
            self.im.denom()
        )
    }

    /// Short human form used by the pretty printer: `3`, `-1/2`, `4/5i`,
    /// `3/5+4/5i`. A leading sign is included when negative.
    pub fn short_string(&self) -> String {
        let re = fmt_ratio(&self.re);
        let im = &self.im;
        if im.is_zero() {
            return re;
        }
        let im_abs = fmt_ratio(&im.abs());
        let im_part = if im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{im_abs}i")
        };
        if self.re.is_zero() {
            if im.is_negative() {
                format!("-{im_part}")
            } else {
                im_part
            }
        } else if im.is_negative() {
            format!("{re}-{im_part}")
        } else {
            format!("{re}+{im_part}")
        }
    }

    /// True when the short form needs parentheses to be used as a factor.
    pub fn needs_parens(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back to scaled shift for huge numerators/denominators
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        BigRational::new(r.numer().clone(), r.denom().clone() << (shift as usize))
    } else {
        BigRational::new(r.numer().clone() << ((-shift) as usize), r.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_string())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &o.re);
        }
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_identities() {
        let a = GaussianRational::from_parts(3, 5, 4, 5);
        let b = GaussianRational::from_parts(-1, 2, 7, 3);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!(a.norm_sq().is_one());
        assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
    }

    #[test]
    fn lowest_terms_and_canonical_zero() {
        let a = GaussianRational::from_parts(2, 4, 0, 7);
        assert_eq!(a.canonical_string(), "1/2+0/1 i");
        assert_eq!(GaussianRational::from_parts(-3, -6, 0, 1), GaussianRational::from_ratio(1, 2));
    }

    #[test]
    fn unit_roots() {
        for k in 0..4 {
            assert_eq!(GaussianRational::unit(k).unit_root_exponent(), Some(k));
        }
        assert_eq!(GaussianRational::from_parts(3, 5, 4, 5).unit_root_exponent(), None);
    }

    #[test]
    fn associate_normal_recombines() {
        for v in [
            GaussianRational::from_parts(-3, 1, 2, 1),
            GaussianRational::from_parts(0, 1, -5, 1),
            GaussianRational::from_parts(-1, 1, -1, 1),
            GaussianRational::from_parts(2, 1, 0, 1),
        ] {
            let (k, b) = v.associate_normal();
            assert!(b.re > BigRational::zero() && b.im >= BigRational::zero());
            assert_eq!(&GaussianRational::unit(k) * &b, v);
        }
    }

    #[test]
    fn pow_respects_cap() {
        let two = GaussianRational::from_int(2);
        assert_eq!(two.pow_capped(10, 1 << 20).unwrap(), GaussianRational::from_int(1024));
        assert!(two.pow_capped(1 << 30, 1 << 20).is_err());
        // units never blow up
        assert_eq!(GaussianRational::i().pow_capped(1 << 40, 8).unwrap(), GaussianRational::one());
    }

    #[test]
    fn short_strings() {
        assert_eq!(GaussianRational::from_parts(3, 5, 4, 5).short_string(), "3/5+4/5i");
        assert_eq!(GaussianRational::from_parts(0, 1, -1, 1).short_string(), "-i");
        assert_eq!(GaussianRational::from_parts(-2, 1, 0, 1).short_string(), "-2");
    }
}
