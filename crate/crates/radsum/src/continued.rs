//! Continued and modified continued Rademacher sums for `Re s > 1`.
//!
//! Each double coset contributes a sum over `d = d0 + k c`, `k` in `Z`. The
//! terms with `|k| <= N` are summed directly; the two tails are expanded in
//! powers of `1 / (z + d/c)` and summed with the Hurwitz zeta function.

use crate::{EvalParams, Order, RadsumError, Result};
use coefficients::CoeffEngine;
use num_complex::Complex64;
use psl2::DoubleCosetKey;
use special::{as_integer, e, gen_exp, hurwitz_zeta, hurwitz_zeta_shift, pow_over_gamma, KahanSum};
use std::sync::Mutex;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const DIRECT_HALF_WIDTH: i64 = 24;
const MAX_TAIL_TERMS: usize = 80;

/// `TS(z, s)`, `sum TSa(s)` and `QS(z, s) = TS - sum TSa`, truncated at `c <= c_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedSums {
    pub ts: Complex64,
    pub tsa_sum: Complex64,
    pub qs: Complex64,
    /// Heuristic size of the omitted `c > c_max` part.
    pub tail_estimate: f64,
    pub c_max: i64,
}

fn key_phase(key: &DoubleCosetKey, m: i64) -> Complex64 {
    let r = (-(m as i128) * key.a as i128).rem_euclid(key.c as i128);
    let (sin, cos) = (TWO_PI * r as f64 / key.c as f64).sin_cos();
    Complex64::new(cos, sin)
}

/// `sum_{d = d0 mod c} TS_chi(z, u)` over all rows of one double coset.
fn ts_key(key: &DoubleCosetKey, m: i64, s: i64, u: Complex64, z: Complex64) -> Result<Complex64> {
    let c = key.c as f64;
    let rho = key.rho();
    let t = u - 2.0 * s as f64;
    let w0 = z + key.d.rem_euclid(key.c) as f64 / c;
    let n = DIRECT_HALF_WIDTH + z.re.abs().ceil() as i64;

    let mut acc = KahanSum::new();
    for k in -n..=n {
        let w = w0 + k as f64;
        acc.add(gen_exp(m as f64 * rho / w, t)? * (rho / (w * w)).powi(s as i32));
    }

    let a0 = Complex64::new(0.0, TWO_PI * m as f64 * rho);
    let rho_s = rho.powi(s as i32);
    let right = w0 + (n + 1) as f64;
    let left = Complex64::new((n + 1) as f64, 0.0) - w0;
    let mut coef = pow_over_gamma(a0, t);
    let mut tail = KahanSum::new();
    let mut small = 0;
    for j in 0..MAX_TAIL_TERMS {
        let sigma = u + j as f64;
        let reflect = (Complex64::new(0.0, -std::f64::consts::PI) * sigma).exp();
        let term = coef
            * rho_s
            * (hurwitz_zeta_shift(right, sigma)? + reflect * hurwitz_zeta_shift(left, sigma)?);
        tail.add(term);
        if term.norm() <= 1e-17 * tail.value().norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
        coef *= a0 / (t + j as f64 + 1.0);
    }
    acc.merge(&tail);
    Ok(key_phase(key, m) * acc.value())
}

/// `sum_{d = d0 mod c, d != 0} TSa_chi(u)` over all rows of one double coset.
fn tsa_key(key: &DoubleCosetKey, m: i64, s: i64, u: Complex64) -> Result<Complex64> {
    if as_integer(u).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rho = key.rho();
    let t = u - 2.0 * s as f64;
    let d0 = key.d.rem_euclid(key.c);
    let alpha = d0 as f64 / key.c as f64;
    let a0 = Complex64::new(0.0, TWO_PI * m as f64 * rho);
    let (pa, pb) = (pow_over_gamma(a0, t), pow_over_gamma(-a0, t));
    let eu = e(u / 2.0);
    let positive = hurwitz_zeta(if d0 == 0 { 1.0 } else { alpha }, u)?;
    let negative = hurwitz_zeta(1.0 - alpha, u)?;
    Ok(key_phase(key, m)
        * rho.powi(s as i32)
        * ((pa - eu * pb) * positive + (pb - eu * pa) * negative))
}

fn check(params: &EvalParams, c_max: i64) -> Result<i64> {
    params.validate()?;
    let Order::Integer(m) = params.order else {
        return Err(RadsumError::Unsupported(
            "continued sums take integer orders".into(),
        ));
    };
    if params.s_cont.re <= 1.0 {
        return Err(RadsumError::Regime(format!(
            "Re s = {} <= 1; use the coefficient route",
            params.s_cont.re
        )));
    }
    if c_max < 1 {
        return Err(RadsumError::InvalidInput("c_max must be positive".into()));
    }
    Ok(m)
}

/// Continued sum `TS`, correction `sum TSa` and modified sum `QS` at `z`, with
/// `d` summed exactly and `c` truncated at `c_max`.
pub fn qs_continued(params: &EvalParams, c_max: i64) -> Result<ContinuedSums> {
    let m = check(params, c_max)?;
    let (s, u, z) = (params.s, params.s_cont, params.z);
    let engine = CoeffEngine::new(&params.spec, params.p, params.q)?;
    let failure = Mutex::new(None);
    let sums = engine.sum_over_c_many(c_max, 2, |_, keys, out| {
        for key in keys {
            match (ts_key(key, m, s, u, z), tsa_key(key, m, s, u)) {
                (Ok(ts), Ok(tsa)) => {
                    out[0] += ts;
                    out[1] += tsa;
                }
                (Err(err), _) | (_, Err(err)) => *failure.lock().unwrap() = Some(err),
            }
        }
    });
    if let Some(err) = failure.into_inner().unwrap() {
        return Err(err);
    }
    let mut ts = sums[0];
    if engine.same_cusp() {
        ts += e(-(m as f64) * z);
    }
    let tsa_sum = sums[1];
    let beta = 2.0 * (u.re - s as f64) - 0.5;
    let amp = (TWO_PI * m as f64).powf(u.re - 2.0 * s as f64);
    let tail = amp * (c_max as f64).powf(1.0 - beta) / (beta - 1.0).max(1e-3);
    Ok(ContinuedSums {
        ts,
        tsa_sum,
        qs: ts - tsa_sum,
        tail_estimate: tail,
        c_max,
    })
}

/// `delta e(-m z) + D(1 - s) + sum_{n >= 1} fc(m, n, s) e(n z)`, the Fourier side of `QS(z, s)`.
pub fn qs_coefficient_route(params: &EvalParams, c_max: i64) -> Result<Complex64> {
    let m = check(params, c_max)?;
    let (s, u, z) = (params.s, params.s_cont, params.z);
    let engine = CoeffEngine::new(&params.spec, params.p, params.q)?;
    let mut total = KahanSum::new();
    if engine.same_cusp() {
        total.add(e(-(m as f64) * z));
    }
    total.add(
        engine
            .dirichlet(s, m, Complex64::new(1.0, 0.0) - u, c_max)?
            .value,
    );
    let mut small = 0;
    for n in 1..=500 {
        let term = engine.fc_continued(s, m, n, u, c_max).value * e(n as f64 * z);
        total.add(term);
        if term.norm() <= 1e-17 * total.value().norm() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(total.value())
}
