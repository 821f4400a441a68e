//! Centering and deck groups of polynomials.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{AffineMap, AlgebraError, GaussianRational, Poly};

/// Deck group summary: `order` is the size of the (cyclic) group of affine
/// maps `γ` with `P ∘ γ = P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckInfo {
    pub order: u64,
    pub is_primitive: bool,
}

/// Conjugates `P` by the translation `γ(z) = z + b` that kills the `z^(d-1)`
/// coefficient. Returns `(γ⁻¹ ∘ P ∘ γ, γ)`.
pub fn center_normalize(p: &Poly) -> Result<(Poly, AffineMap), AlgebraError> {
    let d = p.deg();
    if d < 2 {
        return Err(AlgebraError::DegreeTooLow(d));
    }
    let lead = p.coeff(d);
    let sub = p.coeff(d - 1);
    // b = -a_{d-1} / (d a_d)
    let b = -(&sub / &(&lead * &GaussianRational::from_int(d as i64)));
    let gamma = AffineMap::translation(b);
    let centered = gamma.conjugate(p)?;
    Ok((centered, gamma))
}

/// For centered `P`, `P(az) = P(z)` forces `a^j = 1` on the support, so the
/// deck group is cyclic of order `gcd{ j >= 1 : c_j != 0 }`.
pub fn deck_group(p: &Poly) -> Result<DeckInfo, AlgebraError> {
    let (centered, _) = center_normalize(p)?;
    let d = centered.deg() as u64;
    let order = centered
        .support()
        .filter(|&j| j >= 1)
        .fold(0u64, |g, j| g.gcd(&(j as u64)));
    Ok(DeckInfo { order, is_primitive: order == d })
}
