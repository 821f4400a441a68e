//! Rigorous ping-pong freeness certificates for polynomial pairs.

mod certify;
mod dyadic;
mod eval;
mod geometry;

pub use certify::{
    auto_region, certify_auto, certify_pingpong, certify_preimage_containment, replay_certificate, replay_containment,
    AutoAttempt, AutoOptions, AutoResult, Containment, ContainmentProof, ContainmentStatus, FailedCheck,
    PingPongCertificate, Verdict,
};
pub use dyadic::{Dyadic, Interval, Round};
pub use eval::{escape_radius, interval_eval, tight_escape_radius, verify_escape_radius, CenteredValue, Enclosure, DEFAULT_PRECISION};
pub use geometry::{ComplexBox, Disk, Region};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PingPongError {
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("ping-pong needs polynomials of degree at least 2, got degree {0}")]
    Degree(usize),
    #[error("no disk radii to try")]
    NoRadii,
}
