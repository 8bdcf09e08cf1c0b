//! Regularization factors of the classical and continued component functions.

use crate::Result;
use num_complex::Complex64;
use psl2::CosetRow;
use special::{as_integer, e, gen_exp, partial_exp, phi, pow_over_gamma};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// `mu (chi z - chi inf) = -mu rho / (z + d/c)`.
fn shift(mu: f64, row: &CosetRow, z: Complex64) -> Complex64 {
    let w = z + row.d as f64 / row.c as f64;
    -mu * row.rho() / w
}

/// `e(-mu a / c)` with the argument reduced first.
pub(crate) fn top_phase(mu: f64, row: &CosetRow) -> Complex64 {
    let x = (-mu * row.a as f64 / row.c as f64).rem_euclid(1.0);
    let (sin, cos) = (TWO_PI * x).sin_cos();
    Complex64::new(cos, sin)
}

/// Regularization factor `Rreg^s(mu, chi, z)`: 1 for `s >= 1`, and
/// `1 - e(x)` at `s = 0` with `x = mu chi z - mu chi inf`.
pub fn rreg(s: i64, mu: f64, row: &CosetRow, z: Complex64) -> Complex64 {
    if s >= 1 {
        return Complex64::new(1.0, 0.0);
    }
    let x = shift(mu, row, z);
    let t = 1 - 2 * s;
    match gen_exp(-x, Complex64::new(t as f64, 0.0)) {
        Ok(g) => e(x) * g,
        Err(_) => Complex64::new(1.0, 0.0) - e(x) * partial_exp(-x, t),
    }
}

/// The same factor through its defining confluent hypergeometric expression.
pub fn rreg_phi(s: i64, mu: f64, row: &CosetRow, z: Complex64) -> Result<Complex64> {
    if s >= 1 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let x = shift(mu, row, z);
    let t = (1 - 2 * s) as f64;
    let f = phi(Complex64::new(t, 0.0), Complex64::new(t + 1.0, 0.0), x)?;
    Ok(f * (Complex64::new(0.0, -TWO_PI) * x).powi(t as i32))
}

/// Continued regularization factor `Treg^s(mu, chi, z, u)`; equal to [`rreg`] at `u = 1`.
pub fn treg(s: i64, mu: f64, row: &CosetRow, z: Complex64, u: Complex64) -> Result<Complex64> {
    if u == Complex64::new(1.0, 0.0) {
        return Ok(rreg(s, mu, row, z));
    }
    let x = shift(mu, row, z);
    Ok(e(x) * gen_exp(-x, u - 2.0 * s as f64)?)
}

/// Correction term `TSa^s(mu, chi, u)`; zero when `d = 0` and at every integer `u`.
pub fn tsa_term(s: i64, mu: f64, row: &CosetRow, u: Complex64) -> Complex64 {
    if row.d == 0 || as_integer(u).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    let t = u - 2.0 * s as f64;
    let y = Complex64::new(
        0.0,
        TWO_PI * mu * row.pdet as f64 / (row.c as f64 * row.d as f64),
    );
    let jac = (row.pdet as f64 / (row.d as f64 * row.d as f64)).powi(s as i32);
    top_phase(mu, row) * (pow_over_gamma(y, t) - e(u / 2.0) * pow_over_gamma(-y, t)) * jac
}
