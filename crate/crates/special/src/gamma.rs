//! Lanczos approximation to the complex Gamma function.

use crate::{as_integer, Complex64};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` for `Re z >= 0.5` (any branch; only its exponential is used).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    matches!(as_integer(z), Some(n) if n <= 0)
}

/// Complex Gamma function. Returns infinity at the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        PI / ((PI * z).sin() * ln_gamma_right(1.0 - z).exp())
    } else {
        ln_gamma_right(z).exp()
    }
}

/// Reciprocal Gamma function, entire; exactly zero at the poles of Gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

/// `x^(t) = x^t / Gamma(t + 1)` with the principal branch of `x^t`.
pub fn pow_over_gamma(x: Complex64, t: Complex64) -> Complex64 {
    if is_nonpositive_integer(t + 1.0) {
        return Complex64::new(0.0, 0.0);
    }
    if x == Complex64::new(0.0, 0.0) {
        return if t == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    if (t + 1.0).re >= 0.5 {
        (t * x.ln() - ln_gamma_right(t + 1.0)).exp()
    } else {
        (t * x.ln()).exp() * rgamma(t + 1.0)
    }
}
