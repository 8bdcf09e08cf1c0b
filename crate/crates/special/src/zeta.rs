//! Hurwitz and periodic zeta functions.
//!
//! The Hurwitz zeta function is evaluated by Euler-Maclaurin summation with a
//! shift of `M` terms and Bernoulli corrections up to `B_order`. The defaults
//! are `M = 20`, order 12; the shift is raised to `2|s|` when `|s|` is large.
//! For `-2 <= Re s < 0` a shorter shift with order 30 limits cancellation, and
//! for `Re s < -2` the Hurwitz functional equation is used instead.

use crate::{
    check_finite, gamma::gamma, hyper::e, Complex64, KahanSum, Result, SpecialError, TWO_PI,
};
use std::f64::consts::PI;

/// Euler-Maclaurin parameters for [`hurwitz_zeta_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HurwitzConfig {
    /// Number of terms summed directly before the asymptotic tail.
    pub shift: usize,
    /// Highest Bernoulli number index used in the tail (even, at most 30).
    pub order: usize,
}

impl Default for HurwitzConfig {
    fn default() -> Self {
        Self {
            shift: 20,
            order: 12,
        }
    }
}

impl HurwitzConfig {
    fn for_s(self, s: Complex64) -> Self {
        let grown = (2.0 * s.norm()).ceil() as usize;
        if s.re < 0.0 {
            return Self {
                shift: ((1.2 * s.norm()).ceil() as usize).max(10),
                order: 30,
            };
        }
        Self {
            shift: self.shift.max(grown),
            order: self.order.clamp(2, 30) & !1,
        }
    }
}

/// `B_{2j} / (2j)!` for `j = 1..=15`.
const BERNOULLI_OVER_FACT: [f64; 15] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186134520519971831808000000.0,
    -3392780147.0 / 37893265687455865519472640000000.0,
    1723168255201.0 / 759790291646040068357842010112000000.0,
];

fn cpow(base: Complex64, s: Complex64) -> Complex64 {
    (s * base.ln()).exp()
}

/// Hurwitz zeta `zeta(a, s) = sum_{n >= 0} (n + a)^{-s}` for complex shift `a`
/// with `Re a > 0`, by Euler-Maclaurin with the given configuration.
pub fn hurwitz_zeta_with(a: Complex64, s: Complex64, cfg: HurwitzConfig) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(SpecialError::Pole("Hurwitz zeta at s = 1".into()));
    }
    if a.re <= 0.0 {
        return Err(SpecialError::OutOfRange(format!(
            "shift {a} must have Re > 0"
        )));
    }
    let cfg = cfg.for_s(s);
    let mut acc = KahanSum::new();
    for n in 0..cfg.shift {
        acc.add(cpow(a + n as f64, -s));
    }
    let big = a + cfg.shift as f64;
    let big_neg_s = cpow(big, -s);
    acc.add(big_neg_s * big / (s - 1.0));
    acc.add(big_neg_s * 0.5);
    let inv_sq = 1.0 / (big * big);
    let mut poch = s;
    let mut power = big_neg_s / big;
    for j in 1..=cfg.order / 2 {
        acc.add(BERNOULLI_OVER_FACT[j - 1] * poch * power);
        let jf = j as f64;
        poch *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
        power *= inv_sq;
    }
    check_finite(acc.value(), "hurwitz_zeta")
}

/// Hurwitz zeta with a complex shift and the default configuration.
pub fn hurwitz_zeta_shift(a: Complex64, s: Complex64) -> Result<Complex64> {
    hurwitz_zeta_with(a, s, HurwitzConfig::default())
}

/// Hurwitz zeta `zeta(alpha, s)` for real `alpha > 0`, continued to all `s != 1`.
pub fn hurwitz_zeta(alpha: f64, s: Complex64) -> Result<Complex64> {
    if alpha <= 0.0 {
        return Err(SpecialError::OutOfRange(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    if s.re >= -2.0 {
        return hurwitz_zeta_with(Complex64::new(alpha, 0.0), s, HurwitzConfig::default());
    }
    let int_part = alpha.ceil() - 1.0;
    let frac = alpha - int_part;
    let t = 1.0 - s;
    let direct = |sign: f64| -> Complex64 {
        let sigma = t.re;
        let n_max = (1e17f64.powf(1.0 / (sigma - 1.0))).min(2e6).ceil() as usize;
        let mut acc = KahanSum::new();
        for n in (1..=n_max).rev() {
            let nf = n as f64;
            acc.add(e(Complex64::new(sign * nf * frac, 0.0)) * cpow(Complex64::new(nf, 0.0), -t));
        }
        acc.value()
    };
    let i = Complex64::new(0.0, 1.0);
    let pref = gamma(t) / cpow(Complex64::new(TWO_PI, 0.0), t);
    let mut value =
        pref * ((-i * PI * t / 2.0).exp() * direct(1.0) + (i * PI * t / 2.0).exp() * direct(-1.0));
    for k in 0..int_part as i64 {
        value -= cpow(Complex64::new(frac + k as f64, 0.0), -s);
    }
    check_finite(value, "hurwitz_zeta")
}

/// Periodic zeta `F(p/q, s) = sum_{n >= 1} e(n p / q) n^{-s}`, continued in `s`
/// through the Hurwitz decomposition over residues mod `q`.
pub fn periodic_zeta_rational(p: i64, q: u64, s: Complex64) -> Result<Complex64> {
    if q == 0 {
        return Err(SpecialError::OutOfRange("denominator zero".into()));
    }
    let qi = q as i64;
    let alpha = Complex64::new(p.rem_euclid(qi) as f64 / q as f64, 0.0);
    if s == Complex64::new(1.0, 0.0) {
        if p.rem_euclid(qi) == 0 {
            return Err(SpecialError::Pole("F(0, 1)".into()));
        }
        return Ok(-(Complex64::new(1.0, 0.0) - e(alpha)).ln());
    }
    let mut acc = KahanSum::new();
    for r in 1..=q {
        let rr = r as i64;
        let phase = e(Complex64::new(
            ((rr * p).rem_euclid(qi)) as f64 / q as f64,
            0.0,
        ));
        acc.add(phase * hurwitz_zeta(r as f64 / q as f64, s)?);
    }
    check_finite(
        acc.value() * cpow(Complex64::new(q as f64, 0.0), -s),
        "periodic_zeta",
    )
}

fn rational_approx(x: f64, max_den: u64) -> Option<(i64, u64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let ai = a as i64;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 as u64 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (x - h1 as f64 / k1 as f64).abs() < 1e-13 {
            return Some((h1, k1 as u64));
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    None
}

/// Periodic zeta `F(alpha, s)`. Rational `alpha` (denominator up to 10^4) is
/// continued to all `s`; otherwise only `Re s > 1` by direct summation.
pub fn periodic_zeta(alpha: f64, s: Complex64) -> Result<Complex64> {
    if let Some((p, q)) = rational_approx(alpha, 10_000) {
        return periodic_zeta_rational(p, q, s);
    }
    if s.re <= 1.0 {
        return Err(SpecialError::OutOfRange(format!(
            "irrational alpha requires Re s > 1, got {s}"
        )));
    }
    let n_max = (1e16f64.powf(1.0 / (s.re - 1.0))).min(4e6).ceil() as usize;
    let mut acc = KahanSum::new();
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        acc.add(e(Complex64::new(nf * alpha, 0.0)) * cpow(Complex64::new(nf, 0.0), -s));
    }
    check_finite(acc.value(), "periodic_zeta")
}

/// Residual of the Hurwitz relation
/// `F(a, s) + e(-s/2) F(-a, s) - (-2 pi i)^s / Gamma(s) zeta(1 - a, 1 - s)`.
pub fn hurwitz_relation_residual(alpha: f64, s: Complex64) -> Result<f64> {
    let lhs = periodic_zeta(alpha, s)? + e(-s / 2.0) * periodic_zeta(-alpha, s)?;
    let frac = alpha - alpha.floor();
    let rhs = cpow(Complex64::new(0.0, -TWO_PI), s) / gamma(s) * hurwitz_zeta(1.0 - frac, 1.0 - s)?;
    Ok((lhs - rhs).norm())
}
