//! Rational maps `num / den` in reduced form, with the monomial fast path.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Caps, GaussianRational, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// `num / den` with gcd 1 and monic `den` (so `den == 1` for polynomials).
    Dense { num: Poly, den: Poly },
    Mono(Monomial),
}

/// A non-constant rational map over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    repr: Repr,
}

/// Canonical JSON form: coefficient strings in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalMap {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl RationalMap {
    /// Reduces `num / den` and picks the monomial representation when the
    /// map is `c z^n`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        let m = Self::dense(num, den)?;
        Ok(m.with_fast_path())
    }

    /// Like [`RationalMap::new`] but always keeps the dense representation.
    pub fn dense(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.leading().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero lead");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if num.deg().max(den.deg()) == 0 {
            return Err(AlgebraError::ConstantMap);
        }
        Ok(RationalMap { repr: Repr::Dense { num, den } })
    }

    pub fn polynomial(p: Poly) -> Result<Self, AlgebraError> {
        Self::new(p, Poly::one())
    }

    pub fn monomial(c: &GaussianRational, n: u64) -> Result<Self, AlgebraError> {
        if c.is_zero() || n == 0 {
            return Err(AlgebraError::ConstantMap);
        }
        Ok(RationalMap { repr: Repr::Mono(Monomial::new(c, n)) })
    }

    pub fn from_monomial(m: Monomial) -> Self {
        RationalMap { repr: Repr::Mono(m) }
    }

    /// The identity map `z`, kept on the monomial path.
    pub fn identity() -> Self {
        Self::from_monomial(Monomial::new(&GaussianRational::one(), 1))
    }

    fn with_fast_path(self) -> Self {
        if let Repr::Dense { num, den } = &self.repr {
            if den.is_constant() {
                if let Some((c, k)) = num.as_monomial() {
                    if k >= 1 {
                        return Self::from_monomial(Monomial::new(c, k as u64));
                    }
                }
            }
        }
        self
    }

    /// Dense copy, materializing a monomial if needed.
    pub fn to_dense(&self, caps: &Caps) -> Result<Self, AlgebraError> {
        match &self.repr {
            Repr::Dense { .. } => Ok(self.clone()),
            Repr::Mono(m) => Ok(RationalMap {
                repr: Repr::Dense { num: m.to_poly(caps)?, den: Poly::one() },
            }),
        }
    }

    /// Fast-path copy when the map is a monomial.
    pub fn to_fast(&self) -> Self {
        self.clone().with_fast_path()
    }

    pub fn is_fast_monomial(&self) -> bool {
        matches!(self.repr, Repr::Mono(_))
    }

    pub fn as_fast_monomial(&self) -> Option<&Monomial> {
        match &self.repr {
            Repr::Mono(m) => Some(m),
            Repr::Dense { .. } => None,
        }
    }

    /// `c z^n` view of the map regardless of representation.
    pub fn to_monomial(&self) -> Option<Monomial> {
        match &self.repr {
            Repr::Mono(m) => Some(m.clone()),
            Repr::Dense { num, den } => {
                if !den.is_constant() {
                    return None;
                }
                let (c, k) = num.as_monomial()?;
                (k >= 1).then(|| Monomial::new(c, k as u64))
            }
        }
    }

    pub fn degree(&self) -> u64 {
        match &self.repr {
            Repr::Mono(m) => m.degree,
            Repr::Dense { num, den } => num.deg().max(den.deg()) as u64,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        match &self.repr {
            Repr::Mono(_) => true,
            Repr::Dense { den, .. } => den.is_constant(),
        }
    }

    /// Numerator (materializes monomials with the default caps).
    pub fn num(&self) -> Result<Poly, AlgebraError> {
        match &self.repr {
            Repr::Dense { num, .. } => Ok(num.clone()),
            Repr::Mono(m) => m.to_poly(&Caps::default()),
        }
    }

    pub fn den(&self) -> Poly {
        match &self.repr {
            Repr::Dense { den, .. } => den.clone(),
            Repr::Mono(_) => Poly::one(),
        }
    }

    /// Polynomial view; errors for genuine rational maps.
    pub fn as_poly(&self) -> Result<Poly, AlgebraError> {
        if !self.is_polynomial() {
            return Err(AlgebraError::NotPolynomial);
        }
        self.num()
    }

    fn dense_parts(&self, caps: &Caps) -> Result<(Poly, Poly), AlgebraError> {
        match &self.repr {
            Repr::Dense { num, den } => Ok((num.clone(), den.clone())),
            Repr::Mono(m) => Ok((m.to_poly(caps)?, Poly::one())),
        }
    }

    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap, AlgebraError> {
        self.compose_capped(inner, &Caps::default())
    }

    /// `self ∘ inner`. Monomial∘monomial stays on the fast path; anything
    /// else is composed densely. The result of composing reduced maps is
    /// reduced, so no gcd is taken.
    pub fn compose_capped(&self, inner: &RationalMap, caps: &Caps) -> Result<RationalMap, AlgebraError> {
        if let (Repr::Mono(a), Repr::Mono(b)) = (&self.repr, &inner.repr) {
            return Ok(Self::from_monomial(a.compose(b)?));
        }
        let d = self.degree();
        caps.check_degree(d.saturating_mul(inner.degree()))?;
        let (n, dn) = self.dense_parts(caps)?;
        let (a, b) = inner.dense_parts(caps)?;
        let (num, den) = if b.is_constant() {
            // inner polynomial: n(a)/dn(a), with b == 1 after normalization
            (n.compose(&a, caps)?, dn.compose(&a, caps)?)
        } else {
            // homogenize: Σ c_j a^j b^(d-j)
            let d = d as usize;
            let mut a_pows = vec![Poly::one()];
            let mut b_pows = vec![Poly::one()];
            for _ in 0..d {
                a_pows.push(a_pows.last().unwrap().mul(&a));
                b_pows.push(b_pows.last().unwrap().mul(&b));
            }
            let hom = |p: &Poly| -> Poly {
                let mut acc = Poly::zero();
                for (j, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&a_pows[j].mul(&b_pows[d - j]).scale(c));
                    }
                }
                acc
            };
            let (num, den) = (hom(&n), hom(&dn));
            caps.check_poly(&num)?;
            caps.check_poly(&den)?;
            (num, den)
        };
        let m = Self::dense(num, den)?;
        caps.check_poly(m.dense_num())?;
        Ok(m)
    }

    fn dense_num(&self) -> &Poly {
        match &self.repr {
            Repr::Dense { num, .. } => num,
            Repr::Mono(_) => unreachable!(),
        }
    }

    pub fn iterate(&self, n: u32) -> Result<RationalMap, AlgebraError> {
        self.iterate_capped(n, &Caps::default())
    }

    /// `self^n` (n-fold composition), `n >= 1`.
    pub fn iterate_capped(&self, n: u32, caps: &Caps) -> Result<RationalMap, AlgebraError> {
        assert!(n >= 1, "iterate requires n >= 1");
        if !self.is_fast_monomial() {
            let total = (self.degree() as u128).checked_pow(n).unwrap_or(u128::MAX);
            if total > caps.degree as u128 {
                return Err(AlgebraError::CapExceeded {
                    resource: "degree",
                    limit: caps.degree,
                    requested: total.min(u64::MAX as u128) as u64,
                });
            }
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose_capped(&acc, caps)?;
        }
        Ok(acc)
    }

    /// Exact equality as maps. Fast-path coefficients are compared
    /// structurally first and expanded only when the structures differ.
    pub fn equals_exact(&self, o: &RationalMap) -> Result<bool, AlgebraError> {
        self.equals_exact_capped(o, &Caps::default())
    }

    pub fn equals_exact_capped(&self, o: &RationalMap, caps: &Caps) -> Result<bool, AlgebraError> {
        if self.degree() != o.degree() {
            return Ok(false);
        }
        match (&self.repr, &o.repr) {
            (Repr::Mono(a), Repr::Mono(b)) => {
                if a == b {
                    return Ok(true);
                }
                Ok(a.coef.materialize(caps)? == b.coef.materialize(caps)?)
            }
            (Repr::Dense { num: n1, den: d1 }, Repr::Dense { num: n2, den: d2 }) => {
                Ok(n1 == n2 && d1 == d2)
            }
            _ => {
                let (n1, d1) = self.dense_parts(caps)?;
                let (n2, d2) = o.dense_parts(caps)?;
                Ok(n1 == n2 && d1 == d2)
            }
        }
    }

    /// Evaluates at a complex double (poles give infinities).
    pub fn eval_c64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        match &self.repr {
            Repr::Dense { num, den } => num.eval_c64(z) / den.eval_c64(z),
            Repr::Mono(m) => {
                let c = m.coef.materialize(&Caps::default()).map(|c| c.to_complex64());
                c.unwrap_or(num_complex::Complex64::new(f64::NAN, f64::NAN)) * z.powu(m.degree as u32)
            }
        }
    }

    pub fn to_canonical(&self) -> Result<CanonicalMap, AlgebraError> {
        let (num, den) = self.dense_parts(&Caps::default())?;
        Ok(CanonicalMap {
            num: num.coeffs().iter().map(|c| c.canonical_string()).collect(),
            den: den.coeffs().iter().map(|c| c.canonical_string()).collect(),
        })
    }

    pub fn from_canonical(c: &CanonicalMap) -> Result<Self, AlgebraError> {
        let parse_all = |v: &[String]| -> Result<Poly, AlgebraError> {
            v.iter().map(|s| super::parse_constant(s)).collect::<Result<Vec<_>, _>>().map(Poly::new)
        };
        Self::new(parse_all(&c.num)?, parse_all(&c.den)?)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Dense { num, den } => {
                if den.is_constant() {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/({den})")
                }
            }
            Repr::Mono(m) => {
                let zpow = if m.degree == 1 { "z".to_string() } else { format!("z^{}", m.degree) };
                if m.coef.is_unit_root() && m.coef.unit() == 0 {
                    f.write_str(&zpow)
                } else {
                    write!(f, "{}*{zpow}", m.coef)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_map;

    fn m(s: &str) -> RationalMap {
        parse_map(s).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(m("z^2").compose(&m("z^2+1")).unwrap().equals_exact(&m("z^4+2z^2+1")).unwrap());
        assert!(m("-z^2").compose(&m("z^2")).unwrap().equals_exact(&m("-z^4")).unwrap());
        assert!(m("1/z").compose(&m("1/z")).unwrap().equals_exact(&m("z")).unwrap());
    }

    #[test]
    fn compose_rational_degrees() {
        let f = m("(z^2+1)/(z-2)");
        let g = m("(3z+1)/(z^2+i)");
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.degree(), 4);
        // spot check by evaluation
        let z = num_complex::Complex64::new(0.3, -0.7);
        let direct = f.eval_c64(g.eval_c64(z));
        assert!((fg.eval_c64(z) - direct).norm() < 1e-9);
    }

    #[test]
    fn iterate_examples() {
        assert!(m("z^2").iterate(3).unwrap().equals_exact(&m("z^8")).unwrap());
        assert!(m("-z^2").iterate(2).unwrap().equals_exact(&m("-z^4")).unwrap());
        let lin = m("2z+1").iterate(4).unwrap();
        assert!(lin.equals_exact(&m("16z+15")).unwrap());
        let mut acc = m("2z+1");
        for _ in 1..4 {
            acc = m("2z+1").compose(&acc).unwrap();
        }
        assert_eq!(acc, lin);
    }

    #[test]
    fn equality_examples() {
        assert!(m("z^2").equals_exact(&m("z^2")).unwrap());
        assert!(m("z^2").equals_exact(&m("(2z^2)/2")).unwrap());
        assert!(!m("z^2").equals_exact(&m("z^2+1")).unwrap());
        // across representations
        let dense = m("z^2").to_dense(&Caps::default()).unwrap();
        assert!(dense.equals_exact(&m("z^2")).unwrap());
    }

    #[test]
    fn reduction_and_rejections() {
        let r = m("(z^2-1)/(z-1)");
        assert!(r.equals_exact(&m("z+1")).unwrap());
        assert_eq!(parse_map("(z-1)/(z-1)").unwrap_err(), AlgebraError::ConstantMap);
        assert_eq!(parse_map("z/(z-z)").unwrap_err(), AlgebraError::ZeroDenominator);
    }

    #[test]
    fn canonical_round_trip() {
        let f = m("((3/5+4/5i)z^2-1)/(2z+i)");
        let c = f.to_canonical().unwrap();
        assert_eq!(c.den.last().unwrap(), "1/1+0/1 i");
        assert_eq!(RationalMap::from_canonical(&c).unwrap(), f);
    }
}
