//! Exact, certified and Monte-Carlo tools for finitely generated semigroups of
//! polynomials and rational maps.
//!
//! * [`algebra`]: Gaussian-rational polynomials and rational maps, composition,
//!   normal forms, deck groups, decomposition, exceptional classification and
//!   modular fingerprints.
//! * [`semigroup`]: word enumeration, growth tables, relation probes and
//!   combined verdicts.
//! * [`pingpong`]: interval-arithmetic freeness certificates.
//! * [`measure`]: backward-iteration sampling of maximal-entropy measures,
//!   transfer operators, measure comparison and periodic cycles.

pub mod algebra;
pub mod measure;
pub mod pingpong;
pub mod semigroup;

pub use algebra::{parse_map, AlgebraError, Caps, GaussianRational, Poly, RationalMap};
