//! Finitely generated semigroups of maps: words, growth, relations, probes.

mod affine;
mod classify;
mod enumerate;
mod monomial;
mod probes;
mod verdict;
mod word;

pub use affine::{affine_orbit_separation, AffineSeparation, SeparationOutcome};
pub use classify::{growth_classify, GrowthClass, GrowthFit, GrowthThresholds};
pub use enumerate::{enumerate_growth, Confirmation, EnumPolicy, Enumeration, GrowthTable, Relation};
pub use monomial::{monomial_free_check, MonomialFreeness, MonomialWitness};
pub use probes::{
    common_iterate, levin_check, shared_superattracting, tucker_power_probe, zieve_zhan_search, ProbeOutcome,
    SharedSuperattracting, TuckerRow, ZieveZhanReport,
};
pub use verdict::{amenability_verdict, Budget, CertificateSummary, PairProbes, Status, VerdictReport};
pub use word::Word;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum SemigroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("words must be nonempty")]
    EmptyWord,
    #[error("letter {letter} out of range for {generators} generators")]
    BadLetter { letter: usize, generators: usize },
    #[error("growth classification needs {needed} lengths, got {got}")]
    TooFewLengths { needed: usize, got: usize },
    #[error("{0}")]
    Precondition(String),
}
