//! The factors `Bf^s(m, n)`, evaluated from their power series.

use num_complex::Complex64;
use num_rational::Ratio;
use special::{rgamma, DoubleDouble};

fn four_pi_sq() -> DoubleDouble {
    DoubleDouble::PI * DoubleDouble::PI * 4.0
}

fn factorial(k: u32) -> DoubleDouble {
    (1..=k).fold(DoubleDouble::ONE, |acc, i| acc * i as f64)
}

/// `x^k` for an integer `x`, exact in double-double when `|x|^k < 2^106`.
fn int_pow(x: i64, k: u32) -> DoubleDouble {
    DoubleDouble::new(x as f64).powi(k)
}

/// `Bf^s(m, n)` at `rho = pdet / c^2` for integer `s`.
///
/// For `s >= 1` the series is `(-1)^s sum_k (4 pi^2)^(k+s) rho^k m^(k) n^(k+2s-1)`,
/// otherwise `(-1)^s sum_k (4 pi^2)^(k+1-s) rho^(k+1-2s) m^(k+1-2s) n^(k)`,
/// where `x^(j) = x^j / j!`. Summation is in double-double so that the
/// alternating cases (`m n < 0`) keep double accuracy while the largest term,
/// about `exp(2 sqrt(4 pi^2 rho |m n|))`, stays below `1e16` times the result.
pub fn bessel_factor(rho: Ratio<i64>, m: i64, n: i64, s: i64) -> f64 {
    let rho_dd = DoubleDouble::ratio(*rho.numer() as f64, *rho.denom() as f64);
    let fps = four_pi_sq();
    let x = fps * rho_dd * (m as f64) * (n as f64);
    let (t0, shift) = if s >= 1 {
        let j = (2 * s - 1) as u32;
        let t0 = fps.powi(s as u32) * int_pow(n, j) / factorial(j);
        (t0, 2 * s)
    } else {
        let j = (1 - 2 * s) as u32;
        let t0 = fps.powi((1 - s) as u32) * rho_dd.powi(j) * int_pow(m, j) / factorial(j);
        (t0, 2 - 2 * s)
    };
    let sign = if s.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    if t0.hi == 0.0 {
        return 0.0;
    }
    let mut term = t0;
    let mut sum = t0;
    let mut max_term = t0.abs().hi;
    let mut k: i64 = 0;
    loop {
        let denom = ((k + shift) * (k + 1)) as f64;
        term = term * x / denom;
        sum = sum + term;
        k += 1;
        let t = term.abs().hi;
        max_term = max_term.max(t);
        let past_peak = x.abs().hi < denom;
        if past_peak && (t <= 1e-18 * sum.abs().hi || t <= 1e-33 * max_term) {
            break;
        }
        if t == 0.0 || k > 100_000 {
            break;
        }
    }
    sign * sum.to_f64()
}

/// The continued factor `Bf^s(m, n, u)` for `s <= 0`, `m, n >= 1`:
/// `(-1)^s sum_k (4 pi^2)^(k-s+u) rho^(k-2s+u) m^(k-2s+u) n^(k+u-1)`.
pub fn bessel_factor_continued(rho: f64, m: i64, n: i64, s: i64, u: Complex64) -> Complex64 {
    let fps = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    let sf = s as f64;
    let (mf, nf) = (m as f64, n as f64);
    let log_pre = (u - sf) * fps.ln()
        + (u - 2.0 * sf) * rho.ln()
        + (u - 2.0 * sf) * mf.ln()
        + (u - 1.0) * nf.ln();
    let x = fps * rho * mf * nf;
    let a = u - 2.0 * sf + 1.0;
    let b = u;
    let mut term = rgamma(a) * rgamma(b);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        let denom = (a + k) * (b + k);
        term = term * x / denom;
        sum += term;
        k += 1.0;
        if denom.norm() > x && term.norm() <= 1e-18 * sum.norm() || k > 100_000.0 {
            break;
        }
    }
    let sign = if s.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    log_pre.exp() * sum * sign
}
