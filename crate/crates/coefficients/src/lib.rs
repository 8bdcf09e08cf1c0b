//! Fourier coefficients of Rademacher sums: Kloosterman sums over double
//! cosets, the Bessel-type factors `Bf`, the coefficient functions
//! `fc(m, n)` and their continuations, Dirichlet series through the Hurwitz
//! zeta function, and a few derived probes.

mod bessel;
mod dirichlet;
mod engine;
mod kloosterman;
mod probe;

pub use bessel::{bessel_factor, bessel_factor_continued};
pub use dirichlet::{dirichlet_d, dirichlet_key_alpha, dirichlet_term_hurwitz};
pub use engine::{fc, fc_continued, sk_zeta, CoeffEngine, CoeffQuery, CoeffValue};
pub use kloosterman::kloosterman;
pub use probe::{genus_probe, petersson_norm_ip, GenusProbe, IpOperand};

pub use num_complex::Complex64;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("unsupported group or cusp pair: {0}")]
    UnsupportedSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Special(#[from] special::SpecialError),
}

impl From<psl2::Psl2Error> for CoeffError {
    fn from(e: psl2::Psl2Error) -> Self {
        match e {
            psl2::Psl2Error::Unsupported(s) => CoeffError::UnsupportedSpec(s),
            other => CoeffError::InvalidInput(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CoeffError>;

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
