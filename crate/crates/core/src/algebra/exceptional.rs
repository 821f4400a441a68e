//! Exceptional polynomials: affine maps, and polynomials affinely conjugate to
//! a power map or to `±T_d`. Conjugacy is decided without extracting roots.

use serde::{Deserialize, Serialize};

use super::{center_normalize, AlgebraError, Caps, GaussianRational, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exceptional {
    Linear,
    PowerConjugate,
    /// Conjugate to `sign · T_d`, `sign ∈ {+1, -1}`.
    ChebyshevConjugate(i8),
    NonExceptional,
}

impl Exceptional {
    pub fn is_exceptional(&self) -> bool {
        !matches!(self, Exceptional::NonExceptional)
    }
}

/// Chebyshev polynomial `T_d` from `T_{n+1} = 2z T_n - T_{n-1}`.
pub fn chebyshev(d: usize) -> Poly {
    let mut prev = Poly::one();
    if d == 0 {
        return prev;
    }
    let mut cur = Poly::z();
    let two_z = Poly::from_ints(&[0, 2]);
    for _ in 1..d {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn classify_exceptional(p: &Poly) -> Result<Exceptional, AlgebraError> {
    let d = p.deg();
    match d {
        0 => return Err(AlgebraError::ConstantMap),
        1 => return Ok(Exceptional::Linear),
        _ => {}
    }
    let (centered, _) = center_normalize(p)?;
    if centered.support().eq(std::iter::once(d)) {
        return Ok(Exceptional::PowerConjugate);
    }
    let t = chebyshev(d);
    if !centered.support().eq(t.support()) {
        return Ok(Exceptional::NonExceptional);
    }
    for sign in [1i8, -1] {
        if chebyshev_scaling_exists(&centered, &t, sign)? {
            return Ok(Exceptional::ChebyshevConjugate(sign));
        }
    }
    Ok(Exceptional::NonExceptional)
}

/// Is there `a ≠ 0` in ℂ with `P(a z) / a = ε T_d(z)`? Coefficientwise this is
/// `c_j a^(j-1) = ε t_j` on the common support. With `e_j = j - 1`,
/// `g = gcd(e_j)` and `Σ u_j e_j = g`, any solution has
/// `a^g = A := Π (ε t_j / c_j)^(u_j)`; conversely every constraint is then a
/// power of `A`, and a `g`-th root of `A` always exists in ℂ.
fn chebyshev_scaling_exists(centered: &Poly, t: &Poly, sign: i8) -> Result<bool, AlgebraError> {
    let eps = GaussianRational::from_int(sign as i64);
    let mut constraints: Vec<(i64, GaussianRational)> = Vec::new();
    for j in t.support() {
        let target = &(&eps * &t.coeff(j)) / &centered.coeff(j);
        let e = j as i64 - 1;
        if e == 0 {
            if !target.is_one() {
                return Ok(false);
            }
        } else {
            constraints.push((e, target));
        }
    }
    if constraints.is_empty() {
        return Ok(true);
    }
    // extended gcd over the exponent list
    let (mut g, mut a_pow_g) = (0i64, GaussianRational::one());
    let caps = Caps::default();
    for (e, v) in &constraints {
        let (ng, x, y) = ext_gcd(g, *e);
        // a^ng = (a^g)^x (a^e)^y
        a_pow_g = &int_pow(&a_pow_g, x, &caps)? * &int_pow(v, y, &caps)?;
        g = ng;
    }
    if g < 0 {
        g = -g;
        a_pow_g = a_pow_g.inv().expect("nonzero");
    }
    for (e, v) in &constraints {
        if int_pow(&a_pow_g, e / g, &caps)? != *v {
            return Ok(false);
        }
    }
    Ok(true)
}

fn int_pow(v: &GaussianRational, e: i64, caps: &Caps) -> Result<GaussianRational, AlgebraError> {
    let p = v.pow_capped(e.unsigned_abs(), caps.coeff_bits)?;
    if e < 0 {
        Ok(p.inv().expect("nonzero"))
    } else {
        Ok(p)
    }
}

/// `(g, x, y)` with `a x + b y = g = ±gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a % b);
    (g, y, x - (a / b) * y)
}
