//! Maximal-entropy measures: sampling, operators, comparison and cycles.

mod cycles;
mod operators;
pub mod roots;
mod sample;
mod stats;

pub use cycles::{
    periodic_cycles, permutes, shared_cycle_check, CycleConfig, CycleMeasure, CycleSearch, FlagReason, FlaggedRoot, SharedCycles,
    MAX_CYCLE_DEGREE,
};
pub use operators::{koopman, koopman_apply, lyubich_apply, TestFunction};
pub use roots::{RootConfig, RootError};
pub use sample::{brolin_sample, CloudMeta, PointCloud, SampleConfig};
pub use stats::{invariance_residual, measure_distance, moments, CompareConfig, ComparisonReport, MeasureVerdict, MomentVector, MAX_MOMENT};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("need degree at least 2, got {0}")]
    Degree(usize),
    #[error("root refinement failed at step {step} (target {point}): {source}")]
    Sampling { step: usize, point: Complex64, source: RootError },
    #[error("empty point cloud")]
    EmptyCloud,
    #[error("moment order must be in 1..=16, got {0}")]
    MomentOrder(usize),
    #[error("degree {degree}^{period} exceeds the cycle search limit of 4096")]
    CycleDegree { degree: u64, period: usize },
}
