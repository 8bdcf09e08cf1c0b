//! Branching of the modular-group sums over `Gamma0(2)`.

use crate::{MoonshineError, Result};
use coefficients::CoeffEngine;
use num_traits::ToPrimitive;
use psl2::{arith, cusps, Group, GroupElement, GroupSpec, Point};
use qseries::{hecke_scaled, j_series};

/// One coefficient of the branching identity.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchResidual {
    pub n: i64,
    /// `q^n` coefficient of `m T(m) J + 24 sigma(m)`, exact.
    pub j_side: f64,
    /// `fc_{Gamma0(2), inf|inf}(m, n)`.
    pub infinity_part: f64,
    /// `fc_{Gamma0(2), 0|inf}(w m, n)` with `w` the width of `0`.
    pub zero_part: f64,
    /// `j_side - (infinity_part + w zero_part)`.
    pub residual: f64,
    pub relative: f64,
    /// `j_side - (infinity_part + zero_part)`.
    pub unweighted_residual: f64,
    pub unweighted_relative: f64,
}

/// Branching residuals together with the conventions that fix them.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchingReport {
    pub m: i64,
    pub c_max: i64,
    /// Width of the cusp `0` of `Gamma0(2)` relative to the modular group.
    pub width: i64,
    /// Scaling element at `0` used for the `0|inf` coefficients.
    pub sigma_zero: GroupElement,
    /// How the additive constants are fixed.
    pub constant_convention: String,
    pub rows: Vec<BranchResidual>,
}

impl BranchingReport {
    pub fn max_relative(&self) -> f64 {
        self.rows.iter().map(|r| r.relative).fold(0.0, f64::max)
    }

    pub fn max_unweighted_relative(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.unweighted_relative)
            .fold(0.0, f64::max)
    }
}

/// Residuals of `fc_{PSL2(Z)}(m, n) = fc_{Gamma0(2), inf}(m, n) + w fc_{Gamma0(2), 0}(w m, n)`
/// for `0 <= n <= n_max`, with the left side taken from the exact series `m T(m) J`.
pub fn branching_residuals(m: i64, n_max: i64, c_max: i64) -> Result<BranchingReport> {
    if m < 1 || n_max < 0 || c_max < 1 {
        return Err(MoonshineError::InvalidInput(
            "need m >= 1, n_max >= 0, c_max >= 1".into(),
        ));
    }
    let spec = GroupSpec::gamma0(2)?;
    let group = Group::new(spec.clone())?;
    let zero = Point::rational(0, 1);
    let width = cusps(&group)
        .into_iter()
        .find(|c| c.point == zero)
        .map(|c| c.width.to_integer())
        .expect("Gamma0(2) has a cusp at 0");

    let oracle = hecke_scaled(m as u64, &j_series(m * n_max + 2))?;
    let constant = 24 * arith::sigma(m as u64, 1) as i64;
    let at_infinity = CoeffEngine::new(&spec, Point::Infinity, Point::Infinity)?;
    let at_zero = CoeffEngine::new(&spec, zero, Point::Infinity)?;
    let inf_pairs: Vec<(i64, i64)> = (0..=n_max).map(|n| (m, n)).collect();
    let zero_pairs: Vec<(i64, i64)> = (0..=n_max).map(|n| (width * m, n)).collect();
    let inf_values = at_infinity.fc_many(0, &inf_pairs, c_max);
    let zero_values = at_zero.fc_many(0, &zero_pairs, c_max);
    let sigma_zero = at_zero.fc(0, width * m, 0, 1).sigma_p;

    let rows = (0..=n_max)
        .map(|n| {
            let j_side = if n == 0 {
                constant as f64
            } else {
                oracle.int_coeff(n).to_f64().expect("finite")
            };
            let (inf, zer) = (inf_values[n as usize].re, zero_values[n as usize].re);
            let residual = j_side - (inf + width as f64 * zer);
            let unweighted = j_side - (inf + zer);
            BranchResidual {
                n,
                j_side,
                infinity_part: inf,
                zero_part: zer,
                residual,
                relative: residual.abs() / j_side.abs(),
                unweighted_residual: unweighted,
                unweighted_relative: unweighted.abs() / j_side.abs(),
            }
        })
        .collect();
    Ok(BranchingReport {
        m,
        c_max,
        width,
        sigma_zero,
        constant_convention: format!(
            "constants are the Rademacher constants fc(m, 0) at each cusp; the modular side is m T(m) J + 24 sigma(m); sigma at 0 is {sigma_zero}"
        ),
        rows,
    })
}
