//! Complex boxes, box unions and disks with dyadic data.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Interval, Round};
use crate::algebra::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexBox { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn from_f64(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Self {
        ComplexBox { re: Interval::from_f64(re_lo, re_hi), im: Interval::from_f64(im_lo, im_hi) }
    }

    /// `[-r, r]^2`.
    pub fn square(r: &Dyadic) -> Self {
        let i = Interval::new(r.neg(), r.clone());
        ComplexBox { re: i.clone(), im: i }
    }

    pub fn enclose(c: &GaussianRational, prec: u32) -> Self {
        ComplexBox { re: Interval::enclose(&c.re, prec), im: Interval::enclose(&c.im, prec) }
    }

    pub fn add(&self, o: &ComplexBox, prec: u32) -> ComplexBox {
        ComplexBox { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn mul(&self, o: &ComplexBox, prec: u32) -> ComplexBox {
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        ComplexBox { re, im }
    }

    pub fn center(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    pub fn contains_box(&self, o: &ComplexBox) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    /// Closed boxes share a point.
    pub fn meets(&self, o: &ComplexBox) -> bool {
        !(self.re.strictly_below(&o.re) || o.re.strictly_below(&self.re) || self.im.strictly_below(&o.im) || o.im.strictly_below(&self.im))
    }

    /// Splits the longer axis at its midpoint (real axis on ties).
    pub fn split(&self) -> (ComplexBox, ComplexBox) {
        if self.im.width() > self.re.width() {
            let (a, b) = self.im.bisect();
            (ComplexBox { re: self.re.clone(), im: a }, ComplexBox { re: self.re.clone(), im: b })
        } else {
            let (a, b) = self.re.bisect();
            (ComplexBox { re: a, im: self.im.clone() }, ComplexBox { re: b, im: self.im.clone() })
        }
    }

    /// Exact `min |z - p|^2` over the box.
    pub fn min_dist_sq(&self, pre: &Dyadic, pim: &Dyadic) -> Dyadic {
        let gap = |i: &Interval, c: &Dyadic| {
            if c < &i.lo {
                i.lo.sub(c)
            } else if c > &i.hi {
                c.sub(&i.hi)
            } else {
                Dyadic::zero()
            }
        };
        let (gx, gy) = (gap(&self.re, pre), gap(&self.im, pim));
        gx.mul(&gx).add(&gy.mul(&gy))
    }

    /// Exact `max |z - p|^2` over the box (farthest corner).
    pub fn max_dist_sq(&self, pre: &Dyadic, pim: &Dyadic) -> Dyadic {
        let far = |i: &Interval, c: &Dyadic| Dyadic::max(&i.lo.sub(c).abs(), &i.hi.sub(c).abs());
        let (fx, fy) = (far(&self.re, pre), far(&self.im, pim));
        fx.mul(&fx).add(&fy.mul(&fy))
    }

    /// Upper bound on the half-diagonal.
    pub fn radius_upper(&self, prec: u32) -> Dyadic {
        let hx = self.re.width().shl(-1);
        let hy = self.im.width().shl(-1);
        Dyadic::sqrt_bound(&hx.mul(&hx).add(&hy.mul(&hy)).to_rational(), prec, Round::Up)
    }
}

/// Finite union of closed boxes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub boxes: Vec<ComplexBox>,
}

impl Region {
    pub fn new(boxes: Vec<ComplexBox>) -> Self {
        Region { boxes }
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Exact test that `b` lies in the union: the boxes meeting `b` cut it
    /// into a grid of cells, and each cell's midpoint must be covered.
    pub fn covers(&self, b: &ComplexBox) -> bool {
        if self.boxes.iter().any(|n| n.contains_box(b)) {
            return true;
        }
        let near: Vec<&ComplexBox> = self.boxes.iter().filter(|n| n.meets(b)).collect();
        if near.is_empty() {
            return false;
        }
        let cuts = |lo: &Dyadic, hi: &Dyadic, pick: &dyn Fn(&ComplexBox) -> [Dyadic; 2]| {
            let mut v = vec![lo.clone(), hi.clone()];
            for n in &near {
                for x in pick(n) {
                    if &x > lo && &x < hi {
                        v.push(x);
                    }
                }
            }
            v.sort();
            v.dedup();
            v
        };
        let xs = cuts(&b.re.lo, &b.re.hi, &|n| [n.re.lo.clone(), n.re.hi.clone()]);
        let ys = cuts(&b.im.lo, &b.im.hi, &|n| [n.im.lo.clone(), n.im.hi.clone()]);
        if xs.len() * ys.len() > 1 << 16 {
            return false;
        }
        let mids = |v: &[Dyadic]| -> Vec<Dyadic> {
            if v.len() == 1 {
                vec![v[0].clone()]
            } else {
                v.windows(2).map(|w| w[0].add(&w[1]).shl(-1)).collect()
            }
        };
        let (mx, my) = (mids(&xs), mids(&ys));
        // a cell is covered iff its midpoint is: cell edges are cut points
        mx.iter().all(|x| my.iter().all(|y| near.iter().any(|n| n.re.contains(x) && n.im.contains(y))))
    }

    /// Boxes are strictly separated from every box of `o` (a positive gap).
    pub fn strictly_disjoint(&self, o: &Region) -> Option<(ComplexBox, ComplexBox)> {
        for a in &self.boxes {
            for b in &o.boxes {
                if a.meets(b) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }
}

/// Closed disk `|z - c| ≤ r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disk {
    pub center_re: Dyadic,
    pub center_im: Dyadic,
    pub radius: Dyadic,
}

impl Disk {
    pub fn new(center_re: Dyadic, center_im: Dyadic, radius: Dyadic) -> Self {
        assert!(radius.signum() > 0, "disk radius must be positive");
        Disk { center_re, center_im, radius }
    }

    pub fn from_f64(re: f64, im: f64, r: f64) -> Self {
        Disk::new(Dyadic::from_f64(re), Dyadic::from_f64(im), Dyadic::from_f64(r))
    }

    /// Dyadic upper bound on `sup_{w ∈ D} |w| = |c| + r`.
    pub fn modulus_bound(&self) -> Dyadic {
        let c2 = self.center_re.mul(&self.center_re).add(&self.center_im.mul(&self.center_im));
        Dyadic::sqrt_bound(&c2.to_rational(), 64, Round::Up).add(&self.radius)
    }

    /// Every point of the box lies in the open disk.
    pub fn strictly_contains(&self, b: &ComplexBox) -> bool {
        b.max_dist_sq(&self.center_re, &self.center_im) < self.radius.mul(&self.radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_union_exactly() {
        let r = Region::new(vec![ComplexBox::from_f64(0.0, 1.0, 0.0, 1.0), ComplexBox::from_f64(1.0, 2.0, 0.0, 1.0)]);
        assert!(r.covers(&ComplexBox::from_f64(0.5, 1.5, 0.25, 0.75)));
        assert!(!r.covers(&ComplexBox::from_f64(0.5, 2.5, 0.25, 0.75)));
        let l = Region::new(vec![ComplexBox::from_f64(0.0, 2.0, 0.0, 1.0), ComplexBox::from_f64(0.0, 1.0, 1.0, 2.0)]);
        assert!(l.covers(&ComplexBox::from_f64(0.0, 1.0, 0.0, 2.0)));
        assert!(!l.covers(&ComplexBox::from_f64(0.0, 2.0, 0.0, 2.0)));
    }

    #[test]
    fn distances_and_disk() {
        let b = ComplexBox::from_f64(1.0, 2.0, -1.0, 1.0);
        let z = Dyadic::zero();
        assert_eq!(b.min_dist_sq(&z, &z).to_f64(), 1.0);
        assert_eq!(b.max_dist_sq(&z, &z).to_f64(), 5.0);
        assert!(Disk::from_f64(0.0, 0.0, 2.25).strictly_contains(&b));
        assert!(!Disk::from_f64(0.0, 0.0, 2.0).strictly_contains(&b));
        assert!(Disk::from_f64(3.0, 4.0, 1.0).modulus_bound().to_f64() >= 6.0);
    }

    #[test]
    fn split_longer_axis() {
        let (a, b) = ComplexBox::from_f64(0.0, 1.0, 0.0, 4.0).split();
        assert_eq!(a, ComplexBox::from_f64(0.0, 1.0, 0.0, 2.0));
        assert_eq!(b, ComplexBox::from_f64(0.0, 1.0, 2.0, 4.0));
        let touching = Region::new(vec![ComplexBox::from_f64(1.0, 2.0, 0.0, 1.0)]);
        assert!(Region::new(vec![a]).strictly_disjoint(&touching).is_some());
    }
}
