//! Genus-zero probe and normalized inner products.

use crate::engine::CoeffEngine;
use crate::{CoeffError, Result};
use num_complex::Complex64;
use psl2::{GroupSpec, Point};

/// Outcome of [`genus_probe`].
#[derive(Clone, Debug, PartialEq)]
pub struct GenusProbe {
    pub is_genus_zero: bool,
    /// `r_n = fc(1, -n) - delta(1, n)` for `n = 1..=n_max`.
    pub residuals: Vec<Complex64>,
}

/// Tests `fc(1, -n) = delta(1, n)` for `n = 1..=n_max`, weight zero at infinity.
pub fn genus_probe(spec: &GroupSpec, n_max: i64, c_max: i64, tol: f64) -> Result<GenusProbe> {
    if n_max < 1 {
        return Err(CoeffError::InvalidInput("n_max must be positive".into()));
    }
    let engine = CoeffEngine::new(spec, Point::Infinity, Point::Infinity)?;
    let pairs: Vec<(i64, i64)> = (1..=n_max).map(|n| (1, -n)).collect();
    let residuals: Vec<Complex64> = engine
        .fc_many(0, &pairs, c_max)
        .into_iter()
        .zip(1..)
        .map(|(v, n)| if n == 1 { v - 1.0 } else { v })
        .collect();
    let is_genus_zero = residuals.iter().all(|r| r.norm() < tol);
    Ok(GenusProbe {
        is_genus_zero,
        residuals,
    })
}

/// One side of a normalized inner product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IpOperand {
    /// The Rademacher sum (or Poincare series) of order `m` at cusp `cusp`.
    Sum { cusp: Point, order: i64 },
    /// A constant function (weight zero only).
    Constant,
}

/// Normalized inner product `<R_p^{s,m}, R_q^{s,n}>`.
///
/// For `s <= 0` and `m, n >= 1` this is `n^(2-2s) delta(p, q) delta(m, n)`, and
/// zero against a constant at `s = 0`. For `s >= 1` and `m, n <= -1` it is
/// `(-n)^(2-2s) (delta(p, q) delta(m, n) + fc_{p|q}(m, -n))`.
pub fn petersson_norm_ip(
    spec: &GroupSpec,
    s: i64,
    left: IpOperand,
    right: IpOperand,
    c_max: i64,
) -> Result<Complex64> {
    let (p, m, q, n) = match (left, right) {
        (IpOperand::Sum { cusp: p, order: m }, IpOperand::Sum { cusp: q, order: n }) => {
            (p, m, q, n)
        }
        _ if s == 0 => return Ok(Complex64::new(0.0, 0.0)),
        _ => {
            return Err(CoeffError::InvalidInput(
                "constant operands are only defined at weight zero".into(),
            ))
        }
    };
    let engine = CoeffEngine::new(spec, p, q)?;
    let delta = if engine.same_cusp() && m == n {
        1.0
    } else {
        0.0
    };
    if s <= 0 {
        if m < 1 || n < 1 {
            return Err(CoeffError::InvalidInput("s <= 0 needs m, n >= 1".into()));
        }
        Ok(Complex64::new(
            (n as f64).powi((2 - 2 * s) as i32) * delta,
            0.0,
        ))
    } else {
        if m > -1 || n > -1 {
            return Err(CoeffError::InvalidInput("s >= 1 needs m, n <= -1".into()));
        }
        let fc = engine.fc_raw(s, m, -n, c_max);
        Ok((fc + delta) * (-n as f64).powi((2 - 2 * s) as i32))
    }
}
