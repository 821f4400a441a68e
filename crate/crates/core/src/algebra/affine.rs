use super::{AlgebraError, Caps, GaussianRational, Poly, RationalMap};

/// `z ↦ a z + b` with `a != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

impl AffineMap {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Option<Self> {
        (!a.is_zero()).then_some(AffineMap { a, b })
    }

    pub fn identity() -> Self {
        AffineMap { a: GaussianRational::one(), b: GaussianRational::zero() }
    }

    pub fn translation(b: GaussianRational) -> Self {
        AffineMap { a: GaussianRational::one(), b }
    }

    pub fn scaling(a: GaussianRational) -> Option<Self> {
        Self::new(a, GaussianRational::zero())
    }

    pub fn from_map(f: &RationalMap) -> Option<Self> {
        if f.degree() != 1 || !f.is_polynomial() {
            return None;
        }
        let p = f.as_poly().ok()?;
        Self::new(p.coeff(1), p.coeff(0))
    }

    pub fn apply(&self, z: &GaussianRational) -> GaussianRational {
        &(&self.a * z) + &self.b
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap { a: &self.a * &inner.a, b: &(&self.a * &inner.b) + &self.b }
    }

    pub fn inverse(&self) -> AffineMap {
        let ai = self.a.inv().expect("a != 0");
        AffineMap { b: -(&ai * &self.b), a: ai }
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(vec![self.b.clone(), self.a.clone()])
    }

    pub fn to_map(&self) -> RationalMap {
        RationalMap::polynomial(self.as_poly()).expect("affine map is non-constant")
    }

    /// `conj(P, γ) = γ⁻¹ ∘ P ∘ γ`.
    pub fn conjugate(&self, p: &Poly) -> Result<Poly, AlgebraError> {
        let inner = p.compose(&self.as_poly(), &Caps::default())?;
        self.inverse().as_poly().compose(&inner, &Caps::default())
    }
}
