//! Hauptmoduln, solid-torus equivalence and `n+S` well-formedness.

use crate::{MoonshineError, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use psl2::arith::is_exact_divisor;
use psl2::group::is_subgroup;
use psl2::{Family, GroupSpec};
use qseries::{eta_quotient, j_series, LaurentSeries};

/// Smallest imaginary part accepted by [`solid_torus_equivalent`].
pub const MIN_IM: f64 = 0.2;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const MAX_TERMS: usize = 4000;

/// The normalized hauptmodul of a supported genus-zero group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hauptmodul {
    /// `J = E4^3 / Delta - 744` for the modular group.
    J,
    /// `(eta(z) / eta(2z))^24 + 24` for `Gamma0(2)`.
    T2B,
    /// `f + 4096 / f + 24` with `f = (eta(z) / eta(2z))^24`, for `Gamma0(2)+`.
    T2A,
}

impl Hauptmodul {
    pub fn for_spec(spec: &GroupSpec) -> Result<Hauptmodul> {
        let plain = matches!(spec.family, Family::Gamma0 | Family::Gamma0Plus) && spec.h == 1;
        match (plain, spec.n, spec.s.as_slice()) {
            (true, 1, _) => Ok(Hauptmodul::J),
            (true, 2, [1]) => Ok(Hauptmodul::T2B),
            (true, 2, [1, 2]) => Ok(Hauptmodul::T2A),
            _ => Err(MoonshineError::Unsupported(format!(
                "no hauptmodul implemented for {spec}"
            ))),
        }
    }

    /// Exact `q`-expansion, known below `q^trunc`.
    pub fn series(self, trunc: i64) -> Result<LaurentSeries> {
        match self {
            Hauptmodul::J => Ok(j_series(trunc)),
            Hauptmodul::T2B => Ok(eta_quotient(&[(1, 24), (2, -24)], 24, trunc)?),
            Hauptmodul::T2A => {
                let f = eta_quotient(&[(1, 24), (2, -24)], 0, trunc + 2)?;
                let inv = f
                    .inverse()?
                    .scale(&BigRational::from_integer(BigInt::from(4096)));
                let c = LaurentSeries::constant(BigRational::from_integer(BigInt::from(24)), trunc);
                Ok((&(&f + &inv) + &c).truncate(trunc))
            }
        }
    }

    /// Numerical value at `z` in the upper half plane.
    pub fn value(self, z: Complex64) -> Complex64 {
        match self {
            Hauptmodul::J => {
                let e4 = eisenstein_e4(z);
                e4 * e4 * e4 / eta(z).powi(24) - 744.0
            }
            Hauptmodul::T2B => eta_ratio(z) + 24.0,
            Hauptmodul::T2A => {
                let f = eta_ratio(z);
                f + 4096.0 / f + 24.0
            }
        }
    }
}

fn q_of(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, TWO_PI) * z).exp()
}

/// `eta(z)` from the pentagonal series.
fn eta(z: Complex64) -> Complex64 {
    let q = q_of(z);
    let mut sum = Complex64::new(1.0, 0.0);
    for k in 1..MAX_TERMS as i64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let a = q.powi((k * (3 * k - 1) / 2) as i32);
        let b = q.powi((k * (3 * k + 1) / 2) as i32);
        sum += sign * (a + b);
        if a.norm() < 1e-18 {
            break;
        }
    }
    (Complex64::new(0.0, TWO_PI / 24.0) * z).exp() * sum
}

/// `(eta(z) / eta(2z))^24`.
fn eta_ratio(z: Complex64) -> Complex64 {
    (eta(z) / eta(2.0 * z)).powi(24)
}

fn eisenstein_e4(z: Complex64) -> Complex64 {
    let q = q_of(z);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..MAX_TERMS as u64 {
        qn *= q;
        let term = qn * psl2::arith::sigma(n, 3) as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    1.0 + 240.0 * sum
}

/// Whether `z` and `z2` represent the same point of the quotient, decided by
/// comparing hauptmodul values within `tol`.
pub fn solid_torus_equivalent(
    spec: &GroupSpec,
    z: Complex64,
    z2: Complex64,
    tol: f64,
) -> Result<bool> {
    let hauptmodul = Hauptmodul::for_spec(spec)?;
    for w in [z, z2] {
        if w.im < MIN_IM {
            return Err(MoonshineError::InvalidInput(format!(
                "Im z = {} is below {MIN_IM}",
                w.im
            )));
        }
    }
    Ok((hauptmodul.value(z) - hauptmodul.value(z2)).norm() < tol)
}

/// Whether the `n+S` relation is an equivalence, i.e. `S` is a subgroup of `Ex(n)`.
pub fn ns_equivalence_wellformed(n: u64, s: &[u64]) -> Result<bool> {
    if n == 0 {
        return Err(MoonshineError::InvalidInput("n must be positive".into()));
    }
    if let Some(&bad) = s.iter().find(|&&e| !is_exact_divisor(e, n)) {
        return Err(MoonshineError::InvalidInput(format!(
            "{bad} is not an exact divisor of {n}"
        )));
    }
    Ok(is_subgroup(s))
}
