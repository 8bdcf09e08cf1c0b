//! Hecke operators on the modular-group sum at squarefree index.

use crate::{MoonshineError, Result};
use coefficients::CoeffEngine;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use psl2::{arith, GroupSpec, Point};
use qseries::{hecke_scaled, j_series};
use radsum::fractional_direct;

/// One `q^k` coefficient of `n T(n) (J + 24)` against `fc(n, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeTerm {
    pub k: i64,
    pub oracle: f64,
    pub computed: f64,
    pub relative: f64,
}

/// A fractional-order sum of order `g/h` that should vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalTerm {
    pub g: i64,
    pub h: i64,
    pub value: Complex64,
    pub half_value: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeckeRademacher {
    pub n: u64,
    /// Whether the polar part of `n T(n) J` is exactly `q^-n`.
    pub polar_part_exact: bool,
    pub terms: Vec<HeckeTerm>,
    /// One entry per exact divisor `h > 1` of `n`.
    pub fractional: Vec<FractionalTerm>,
}

impl HeckeRademacher {
    pub fn max_relative(&self) -> f64 {
        self.terms.iter().map(|t| t.relative).fold(0.0, f64::max)
    }

    pub fn max_fractional(&self) -> f64 {
        self.fractional
            .iter()
            .map(|t| t.value.norm())
            .fold(0.0, f64::max)
    }
}

/// Compares `n T(n)` of the order-one sum with the order-`n` sum for `0 <= k <= k_max`,
/// and evaluates the fractional sums of order `(n/h)/h` at `z` over a rectangle of size `k_rect`.
pub fn hecke_rademacher_identity(
    n: u64,
    k_max: i64,
    c_max: i64,
    z: Complex64,
    k_rect: f64,
) -> Result<HeckeRademacher> {
    if n == 0 || arith::mobius(n) == 0 {
        return Err(MoonshineError::InvalidInput(format!(
            "{n} is not squarefree"
        )));
    }
    if k_max < 0 {
        return Err(MoonshineError::InvalidInput(
            "k_max must be non-negative".into(),
        ));
    }
    let ni = n as i64;
    let oracle = hecke_scaled(n, &j_series(ni * k_max + 2))?;
    let polar_part_exact = (-ni..0).all(|k| {
        let c = oracle.coeff(k).unwrap();
        if k == -ni {
            c.is_one()
        } else {
            c.is_zero()
        }
    });

    let spec = GroupSpec::psl2z();
    let engine = CoeffEngine::new(&spec, Point::Infinity, Point::Infinity)?;
    let pairs: Vec<(i64, i64)> = (0..=k_max).map(|k| (ni, k)).collect();
    let values = engine.fc_many(0, &pairs, c_max);
    let terms = (0..=k_max)
        .map(|k| {
            let exact = if k == 0 {
                24.0 * arith::sigma(n, 1) as f64
            } else {
                oracle.int_coeff(k).to_f64().expect("finite")
            };
            let computed = values[k as usize].re;
            HeckeTerm {
                k,
                oracle: exact,
                computed,
                relative: (computed - exact).abs() / exact.abs(),
            }
        })
        .collect();

    let mut fractional = Vec::new();
    for h in arith::exact_divisors(n).into_iter().filter(|&h| h > 1) {
        let (g, h) = ((n / h) as i64, h as i64);
        let sum = fractional_direct(&spec, g, h, z, k_rect)?;
        fractional.push(FractionalTerm {
            g,
            h,
            value: sum.value,
            half_value: sum.half_value,
        });
    }
    Ok(HeckeRademacher {
        n,
        polar_part_exact,
        terms,
        fractional,
    })
}
