//! Special functions shared by the Rademacher summation code.
//!
//! Everything here works in double precision. Complex powers use the
//! principal branch, `-pi < arg <= pi`, and `x^(s)` denotes `x^s / Gamma(s+1)`.

mod dd;
mod gamma;
mod hyper;
mod sum;
mod zeta;

pub use dd::DoubleDouble;
pub use gamma::{gamma, pow_over_gamma, rgamma};
pub use hyper::{e, gen_exp, partial_exp, phi, PHI_RADIUS};
pub use sum::KahanSum;
pub use zeta::{
    hurwitz_relation_residual, hurwitz_zeta, hurwitz_zeta_shift, hurwitz_zeta_with, periodic_zeta,
    periodic_zeta_rational, HurwitzConfig,
};

pub use num_complex::Complex64;

use thiserror::Error;

/// Errors raised by the special functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("argument outside the supported region: {0}")]
    OutOfRange(String),
    #[error("non-finite result in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, SpecialError>;

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

pub(crate) fn check_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(SpecialError::NonFinite(what))
    }
}

/// True when `s` is (numerically exactly) a real integer.
pub fn as_integer(s: Complex64) -> Option<i64> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e15 {
        Some(s.re as i64)
    } else {
        None
    }
}
