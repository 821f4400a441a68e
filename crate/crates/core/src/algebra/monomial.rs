//! Monomial fast path: maps `c z^n` with the coefficient kept as a product of
//! base powers, so long words never expand their coefficients.

use std::fmt;

use super::{AlgebraError, Caps, GaussianRational, Poly};

/// A nonzero coefficient `i^unit * Π base^exp`. Bases are distinct, sorted,
/// lie in the sector `re > 0, im >= 0` and are never `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoCoef {
    unit: u8,
    factors: Vec<(GaussianRational, u64)>,
}

fn overflow(what: &'static str) -> AlgebraError {
    AlgebraError::CapExceeded { resource: what, limit: u64::MAX, requested: u64::MAX }
}

impl MonoCoef {
    pub fn one() -> Self {
        MonoCoef { unit: 0, factors: Vec::new() }
    }

    /// Panics on zero.
    pub fn from_value(c: &GaussianRational) -> Self {
        assert!(!c.is_zero(), "monomial coefficient must be nonzero");
        let (unit, base) = c.associate_normal();
        let factors = if base.is_one() { Vec::new() } else { vec![(base, 1)] };
        MonoCoef { unit, factors }
    }

    pub fn unit(&self) -> u8 {
        self.unit
    }

    pub fn factors(&self) -> &[(GaussianRational, u64)] {
        &self.factors
    }

    /// True when the coefficient is a power of `i` (finite multiplicative order).
    pub fn is_unit_root(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, o: &MonoCoef) -> Result<MonoCoef, AlgebraError> {
        let mut factors = Vec::with_capacity(self.factors.len() + o.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < o.factors.len() {
            match (self.factors.get(i), o.factors.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    let e = a.1.checked_add(b.1).ok_or_else(|| overflow("exponent"))?;
                    factors.push((a.0.clone(), e));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    factors.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    factors.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    factors.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    factors.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(MonoCoef { unit: (self.unit + o.unit) % 4, factors })
    }

    pub fn pow(&self, e: u64) -> Result<MonoCoef, AlgebraError> {
        if e == 0 {
            return Ok(MonoCoef::one());
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for (b, k) in &self.factors {
            factors.push((b.clone(), k.checked_mul(e).ok_or_else(|| overflow("exponent"))?));
        }
        Ok(MonoCoef { unit: ((self.unit as u64 * (e % 4)) % 4) as u8, factors })
    }

    /// Expands the product exactly, subject to the coefficient cap.
    pub fn materialize(&self, caps: &Caps) -> Result<GaussianRational, AlgebraError> {
        let mut acc = GaussianRational::unit(self.unit);
        for (b, e) in &self.factors {
            let pw = b.pow_capped(*e, caps.coeff_bits)?;
            acc = &acc * &pw;
            let bits = acc.max_component_bits();
            if bits > caps.coeff_bits {
                return Err(AlgebraError::CapExceeded {
                    resource: "coefficient bits",
                    limit: caps.coeff_bits,
                    requested: bits,
                });
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for MonoCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = match self.unit {
            0 => "",
            1 => "i",
            2 => "-1",
            _ => "-i",
        };
        let mut parts: Vec<String> = Vec::new();
        if !unit.is_empty() {
            parts.push(unit.to_string());
        }
        for (b, e) in &self.factors {
            let base = if b.needs_parens() || b.to_string().contains('/') {
                format!("({b})")
            } else {
                b.to_string()
            };
            if *e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// `coef * z^degree` with `degree >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef: MonoCoef,
    pub degree: u64,
}

impl Monomial {
    pub fn new(coef: &GaussianRational, degree: u64) -> Self {
        Monomial { coef: MonoCoef::from_value(coef), degree }
    }

    /// `self ∘ inner = c1 (c2 z^n2)^n1 = c1 c2^n1 z^(n1 n2)`.
    pub fn compose(&self, inner: &Monomial) -> Result<Monomial, AlgebraError> {
        let coef = self.coef.mul(&inner.coef.pow(self.degree)?)?;
        let degree = self
            .degree
            .checked_mul(inner.degree)
            .ok_or_else(|| overflow("monomial degree"))?;
        Ok(Monomial { coef, degree })
    }

    pub fn to_poly(&self, caps: &Caps) -> Result<Poly, AlgebraError> {
        caps.check_degree(self.degree)?;
        Ok(Poly::monomial(self.coef.materialize(caps)?, self.degree as usize))
    }
}
