//! Rigorous polynomial enclosures and escape radii.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{Dyadic, Round};
use super::geometry::ComplexBox;
use crate::algebra::Poly;

pub const DEFAULT_PRECISION: u32 = 64;

/// Horner evaluation of `P` over a box with outward rounding at `prec` bits.
pub fn interval_eval(p: &Poly, b: &ComplexBox, prec: u32) -> ComplexBox {
    let cs = p.coeffs();
    let zero = ComplexBox::point(Dyadic::zero(), Dyadic::zero());
    let Some(last) = cs.last() else { return zero };
    let mut acc = ComplexBox::enclose(last, prec);
    for c in cs.iter().rev().skip(1) {
        acc = acc.mul(b, prec).add(&ComplexBox::enclose(c, prec), prec);
    }
    acc
}

/// Coefficient enclosures at a fixed precision, reused across many boxes.
pub struct Enclosure {
    coeffs: Vec<ComplexBox>,
    prec: u32,
}

/// Disk-shaped enclosure `P(box) ⊆ { |w - c| ≤ radius }` with `c` in `center`.
pub struct CenteredValue {
    pub center: ComplexBox,
    pub radius: Dyadic,
}

impl Enclosure {
    pub fn new(p: &Poly, prec: u32) -> Self {
        Enclosure { coeffs: p.coeffs().iter().map(|c| ComplexBox::enclose(c, prec)).collect(), prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Taylor expansion at the box midpoint `m`: `P(m + t) = Σ b_k t^k`, so
    /// `P(box) ⊆ b_0 + { |w| ≤ Σ_{k≥1} |b_k| ρ^k }` with `ρ` the half-diagonal.
    pub fn centered(&self, b: &ComplexBox) -> CenteredValue {
        let prec = self.prec;
        let (mre, mim) = b.center();
        let m = ComplexBox::point(mre, mim);
        let mut work = self.coeffs.clone();
        let d = work.len().saturating_sub(1);
        let mut taylor = Vec::with_capacity(d + 1);
        // repeated synthetic division by (z - m)
        for k in 0..=d {
            let top = d - k;
            for j in (0..top).rev() {
                let t = work[j + 1].mul(&m, prec);
                work[j] = work[j].add(&t, prec);
            }
            taylor.push(work[0].clone());
            work.remove(0);
        }
        let rho = b.radius_upper(32);
        let mut radius = Dyadic::zero();
        let mut rho_k = Dyadic::from_int(1);
        for bk in taylor.iter().skip(1) {
            rho_k = rho_k.mul(&rho).round(prec, Round::Up);
            let mag = bk.re.mag().mul(&bk.re.mag()).add(&bk.im.mag().mul(&bk.im.mag()));
            let abs = Dyadic::sqrt_bound(&mag.to_rational(), 32, Round::Up);
            radius = radius.add(&abs.mul(&rho_k)).round(prec, Round::Up);
        }
        CenteredValue { center: taylor.into_iter().next().expect("nonempty"), radius }
    }
}

/// `|a_d|` from below and `|a_j|`, `j < d`, from above.
fn modulus_bounds(p: &Poly) -> (BigRational, Vec<BigRational>) {
    let d = p.deg();
    let lower = Dyadic::sqrt_bound(&p.coeff(d).norm_sq(), 64, Round::Down).to_rational();
    let uppers = (0..d).map(|j| Dyadic::sqrt_bound(&p.coeff(j).norm_sq(), 64, Round::Up).to_rational()).collect();
    (lower, uppers)
}

/// `R = max(1, (M + Σ_{j<d} |a_j|) / |a_d| + 1)`, rounded up to a dyadic.
/// For `|z| ≥ R`: `|P(z)| ≥ |z|^(d-1) (|a_d||z| - Σ|a_j|) ≥ M + |a_d| > M`.
pub fn escape_radius(p: &Poly, m: &Dyadic) -> Dyadic {
    assert!(p.deg() >= 1, "escape radius needs a non-constant polynomial");
    let (lead, rest) = modulus_bounds(p);
    let sum: BigRational = rest.iter().fold(m.to_rational(), |acc, x| acc + x);
    let r = sum / lead + BigRational::one();
    let r = if r < BigRational::one() { BigRational::one() } else { r };
    Dyadic::from_rational(&r, 32, Round::Up)
}

/// `g(R) = |a_d| R^d - Σ_{j<d} |a_j| R^j - M > 0` (with the bounds above).
/// `g` has one sign change, so by Descartes' rule it has one positive root
/// and `g(R) > 0` forces `g > 0` on `[R, ∞)`, hence `|P(z)| > M` for `|z| ≥ R`.
pub fn verify_escape_radius(p: &Poly, m: &Dyadic, r: &Dyadic) -> bool {
    if p.deg() < 1 || r.signum() <= 0 || m.is_negative() {
        return false;
    }
    let (lead, rest) = modulus_bounds(p);
    let x = r.to_rational();
    let mut g = -m.to_rational();
    let mut pw = BigRational::one();
    for a in &rest {
        g -= a * &pw;
        pw *= &x;
    }
    g += lead * pw;
    g > BigRational::zero()
}

/// Smallest dyadic found by bisection on `[0, escape_radius]` that still
/// passes [`verify_escape_radius`].
pub fn tight_escape_radius(p: &Poly, m: &Dyadic) -> Dyadic {
    let mut hi = escape_radius(p, m);
    let mut lo = Dyadic::zero();
    for _ in 0..24 {
        let mid = lo.add(&hi).shl(-1).round(24, Round::Up);
        if mid >= hi {
            break;
        }
        if verify_escape_radius(p, m, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational;
    use num_complex::Complex64;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn horner_examples() {
        let sq = p(&[0, 0, 1]);
        let r = interval_eval(&sq, &ComplexBox::from_f64(1.0, 2.0, 0.0, 0.0), 64);
        assert!(r.re.lo.to_f64() <= 1.0 && r.re.hi.to_f64() >= 4.0);
        let r = interval_eval(&sq, &ComplexBox::from_f64(-1.0, 1.0, -1.0, 1.0), 64);
        assert!(r.contains_box(&ComplexBox::from_f64(-2.0, 2.0, -2.0, 2.0)));
        let r = interval_eval(&p(&[6, 0, 1]), &ComplexBox::from_f64(0.0, 0.0, 0.0, 0.0), 64);
        assert_eq!(r, ComplexBox::from_f64(6.0, 6.0, 0.0, 0.0));
    }

    #[test]
    fn centered_form_contains_samples() {
        let poly = Poly::new(vec![
            GaussianRational::from_parts(1, 3, -1, 1),
            GaussianRational::from_int(2),
            GaussianRational::zero(),
            GaussianRational::from_parts(1, 1, 1, 2),
        ]);
        let b = ComplexBox::from_f64(0.25, 0.5, -0.75, -0.5);
        let enc = Enclosure::new(&poly, 64).centered(&b);
        let c = (enc.center.re.mid().to_f64(), enc.center.im.mid().to_f64());
        let coeffs = poly.to_c64();
        for i in 0..=8 {
            for j in 0..=8 {
                let z = Complex64::new(0.25 + 0.25 * i as f64 / 8.0, -0.75 + 0.25 * j as f64 / 8.0);
                let w = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |a, k| a * z + k);
                assert!((w - Complex64::new(c.0, c.1)).norm() <= enc.radius.to_f64() + 1e-12);
            }
        }
        assert!(enc.radius.to_f64() < 1.0);
    }

    #[test]
    fn escape_examples() {
        let r = escape_radius(&p(&[0, 0, 1]), &Dyadic::from_int(4));
        assert!(r.to_f64() <= 5.0 && r.to_f64().powi(2) > 4.0);
        let r = escape_radius(&p(&[6, 0, 1]), &Dyadic::from_int(3));
        assert!(r.to_f64().powi(2) - 6.0 > 3.0);
        let r = escape_radius(&p(&[1, 2]), &Dyadic::from_int(10));
        assert!(2.0 * r.to_f64() - 1.0 > 10.0);
        // tight radius for z^2+6, M = 4 lies just above sqrt(10)
        let t = tight_escape_radius(&p(&[6, 0, 1]), &Dyadic::from_int(4)).to_f64();
        assert!(t > 10f64.sqrt() && t < 10f64.sqrt() + 1e-5, "{t}");
        assert!(!verify_escape_radius(&p(&[6, 0, 1]), &Dyadic::from_int(4), &Dyadic::from_int(3)));
    }
}
