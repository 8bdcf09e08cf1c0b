//! Exact formal series: Laurent series in `q` with rational coefficients and a
//! tracked truncation order, bivariate `(p, q)` series, and the classical
//! oracles built from them (eta products, Eisenstein series, `Delta`, `J`),
//! Hecke operators and Faber polynomials.

mod bivariate;
mod hecke;
mod laurent;
mod modular;

pub use bivariate::BiSeries;
pub use hecke::{eval_polynomial, faber, hecke_scaled, hecke_t, hecke_t_level};
pub use laurent::LaurentSeries;
pub use modular::{
    delta, eisenstein_e4, eisenstein_e6, eta_product, eta_quotient, j_series, j_series_via_e6,
    partitions, tau,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("leading coefficient is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
