//! Moonshine-level identities and predicates.
//!
//! Generating functions of Verma modules and the denominator identity are
//! computed in exact rational arithmetic; branching and Hecke identities
//! compare exact `q`-series against Rademacher coefficients; the moduli and
//! characterization predicates work with group data from [`psl2`].

mod branching;
mod characterize;
mod gdim;
mod hecke;
mod moduli;

pub use branching::{branching_residuals, BranchResidual, BranchingReport};
pub use characterize::{char_check, scaling_square, CharCheck, CharCheckOptions};
pub use gdim::{
    denominator_quotient, denominator_residual, fricke_domination, verma_gdim, z_series,
    DenominatorQuotient, GdimBundle,
};
pub use hecke::{hecke_rademacher_identity, FractionalTerm, HeckeRademacher, HeckeTerm};
pub use moduli::{ns_equivalence_wellformed, solid_torus_equivalent, Hauptmodul, MIN_IM};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MoonshineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    /// Two routes that must agree exactly did not.
    #[error("internal identity failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Series(#[from] qseries::SeriesError),
    #[error(transparent)]
    Coeff(#[from] coefficients::CoeffError),
    #[error(transparent)]
    Radsum(#[from] radsum::RadsumError),
    #[error(transparent)]
    Psl2(#[from] psl2::Psl2Error),
}

pub type Result<T> = std::result::Result<T, MoonshineError>;
