//! Invariance residuals `|f(g z) jac(g, z)^s - f(z)|` for pluggable evaluators.

use crate::{rs_direct, EvalParams, RadsumError, Result, SLOW_IM};
use num_complex::Complex64;
use psl2::GroupElement;
use qseries::LaurentSeries;

/// A function on part of the upper half plane.
pub trait Evaluator {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    /// Whether `z` lies in the region where [`Evaluator::eval`] is trustworthy.
    fn contains(&self, z: Complex64) -> bool;
}

/// A truncated `q`-series, trusted for `Im z >= min_im`.
#[derive(Clone, Debug)]
pub struct SeriesEvaluator {
    series: LaurentSeries,
    min_im: f64,
}

impl SeriesEvaluator {
    pub fn new(series: LaurentSeries, min_im: f64) -> SeriesEvaluator {
        SeriesEvaluator { series, min_im }
    }
}

impl Evaluator for SeriesEvaluator {
    /// Reduces `Re z` into `[0, 1)` first, so integer translates give identical values.
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let x = z.re - z.re.floor();
        Ok(self.series.eval_at(Complex64::new(x, z.im)))
    }

    fn contains(&self, z: Complex64) -> bool {
        z.im >= self.min_im
    }
}

/// The classical rectangle sum with fixed group, order and bound.
#[derive(Clone, Debug)]
pub struct DirectEvaluator {
    pub params: EvalParams,
}

impl Evaluator for DirectEvaluator {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(rs_direct(&self.params.clone().with_z(z))?.value)
    }

    fn contains(&self, z: Complex64) -> bool {
        z.im >= SLOW_IM
    }
}

/// `|f(g z) jac(g, z)^s - f(z)|`, provided both points lie in the evaluator's region.
pub fn invariance_residual(
    f: &dyn Evaluator,
    g: &GroupElement,
    z: Complex64,
    s: i64,
) -> Result<f64> {
    let (gz, jac) = g.act_jac(z);
    for w in [z, gz] {
        if !f.contains(w) {
            return Err(RadsumError::OutOfRegion(format!("{w}")));
        }
    }
    Ok((f.eval(gz)? * jac.powi(s as i32) - f.eval(z)?).norm())
}
