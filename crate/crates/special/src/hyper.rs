//! The confluent hypergeometric function `Phi` and generalized exponentials.

use crate::{
    as_integer, check_finite, gamma::rgamma, Complex64, KahanSum, Result, SpecialError, TWO_PI,
};

/// Direct summation is only attempted for `|2 pi z|` up to this radius.
pub const PHI_RADIUS: f64 = 30.0;

const REL_STOP: f64 = 1e-18;
const MAX_TERMS: usize = 2000;

/// `e(z) = exp(2 pi i z)`.
pub fn e(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, TWO_PI) * z).exp()
}

fn check_radius(w: Complex64) -> Result<()> {
    if w.norm() > PHI_RADIUS {
        Err(SpecialError::OutOfRange(format!(
            "|2 pi z| = {} exceeds the series radius {}",
            w.norm(),
            PHI_RADIUS
        )))
    } else {
        Ok(())
    }
}

/// Sum `t_0 + t_1 + ...` where `t_{k+1} = t_k * ratio(k)`, stopping once two
/// consecutive terms fall below `REL_STOP` relative to the partial sum.
fn ratio_series(
    t0: Complex64,
    w_norm: f64,
    mut ratio: impl FnMut(usize) -> Complex64,
) -> Complex64 {
    let mut acc = KahanSum::new();
    let mut term = t0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        acc.add(term);
        if term.norm() <= REL_STOP * acc.value().norm() || term.norm() == 0.0 {
            small += 1;
            if small >= 2 && k as f64 > w_norm {
                break;
            }
        } else {
            small = 0;
        }
        term *= ratio(k);
    }
    acc.value()
}

/// `Phi(a, b, z) = sum_k Gamma(k+a) / (Gamma(a) Gamma(k+b)) (2 pi i z)^(k)`.
///
/// Errors when `b` is a non-positive integer, or `|2 pi z|` exceeds [`PHI_RADIUS`].
pub fn phi(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if matches!(as_integer(b), Some(n) if n <= 0) {
        return Err(SpecialError::Pole(format!("Gamma(k + b) with b = {b}")));
    }
    let w = Complex64::new(0.0, TWO_PI) * z;
    check_radius(w)?;
    let t0 = rgamma(b);
    let value = ratio_series(t0, w.norm(), |k| {
        let k = k as f64;
        (a + k) / (b + k) * w / (k + 1.0)
    });
    check_finite(value, "phi")
}

/// Partial exponential `e(z)_{<n} = sum_{k<n} (2 pi i z)^k / k!`.
pub fn partial_exp(z: Complex64, n: i64) -> Complex64 {
    let w = Complex64::new(0.0, TWO_PI) * z;
    let mut acc = KahanSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n.max(0) {
        acc.add(term);
        term *= w / (k + 1) as f64;
    }
    acc.value()
}

/// Generalized exponential `e(z, s) = sum_{k >= 0} (2 pi i z)^(k + s)`.
///
/// For integer `s = n <= 0` this is `e(z)`; for integer `n >= 1` it is
/// `e(z) - e(z)_{<n}`, summed directly so small `z` loses no digits.
pub fn gen_exp(z: Complex64, s: Complex64) -> Result<Complex64> {
    let w = Complex64::new(0.0, TWO_PI) * z;
    if let Some(n) = as_integer(s) {
        if n <= 0 {
            return Ok(e(z));
        }
        check_radius(w)?;
        if w.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut t0 = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            t0 *= w / k as f64;
        }
        let value = ratio_series(t0, w.norm(), |k| w / (k as f64 + n as f64 + 1.0));
        return check_finite(value, "gen_exp");
    }
    if w.norm() == 0.0 {
        return if s.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(SpecialError::Pole(format!("0^s with s = {s}")))
        };
    }
    check_radius(w)?;
    let lead = (s * w.ln()).exp();
    let series = phi(Complex64::new(1.0, 0.0), s + 1.0, z)?;
    check_finite(lead * series, "gen_exp")
}
