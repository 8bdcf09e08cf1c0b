//! Dirichlet series `D^s_m(u)` attached to translate sets, continued through
//! the Hurwitz zeta function.

use crate::engine::CoeffEngine;
use crate::{CoeffError, CoeffValue, Result, TWO_PI};
use num_complex::Complex64;
use psl2::{DoubleCosetKey, GroupSpec, Point};
use special::{e, hurwitz_zeta, pow_over_gamma, KahanSum};

/// `alpha` in `[0, 1)` with `alpha = -chi^-1 . inf = d / c (mod 1)`.
pub fn dirichlet_key_alpha(key: &DoubleCosetKey) -> f64 {
    key.d.rem_euclid(key.c) as f64 / key.c as f64
}

/// `D'_chi(u) = e(-m a / c) rho^(u-w) (2 pi i m)^(u-2w) (e(u/2) - e(-u/2)) zeta(1 - alpha, u)`,
/// for weight index `w <= 0` and order `m >= 1`. At `u = 1` the pole of the
/// Hurwitz zeta function cancels and the limit `-2 pi i` is used for the last two factors.
pub fn dirichlet_term_hurwitz(
    key: &DoubleCosetKey,
    w: i64,
    m: i64,
    u: Complex64,
) -> Result<Complex64> {
    let rho = key.rho();
    let wf = w as f64;
    let phase = {
        let r = (-(m as i128) * key.a as i128).rem_euclid(key.c as i128);
        let (sin, cos) = (TWO_PI * r as f64 / key.c as f64).sin_cos();
        Complex64::new(cos, sin)
    };
    let pre = phase
        * ((u - wf) * rho.ln()).exp()
        * pow_over_gamma(Complex64::new(0.0, TWO_PI * m as f64), u - 2.0 * wf);
    let tail = if u == Complex64::new(1.0, 0.0) {
        Complex64::new(0.0, -TWO_PI)
    } else {
        let alpha = dirichlet_key_alpha(key);
        (e(u / 2.0) - e(-u / 2.0)) * hurwitz_zeta(1.0 - alpha, u)?
    };
    Ok(pre * tail)
}

impl CoeffEngine {
    /// `D^w_m(s) = sum_chi D'_chi(1 - s)`, truncated at `c <= c_max`.
    pub fn dirichlet(&self, w: i64, m: i64, s: Complex64, c_max: i64) -> Result<CoeffValue> {
        if w > 0 || m < 1 {
            return Err(CoeffError::InvalidInput(
                "Dirichlet series need weight index w <= 0 and m >= 1".into(),
            ));
        }
        let u = Complex64::new(1.0, 0.0) - s;
        if u != Complex64::new(1.0, 0.0) && (u - 1.0).norm() < 1e-12 {
            return Err(CoeffError::InvalidInput(
                "too close to the removable point s = 0".into(),
            ));
        }
        let failure = std::sync::Mutex::new(None);
        let v = self.sum_over_c(c_max, |_, keys| {
            let mut acc = KahanSum::new();
            for k in keys {
                match dirichlet_term_hurwitz(k, w, m, u) {
                    Ok(t) => acc.add(t),
                    Err(err) => *failure.lock().unwrap() = Some(err),
                }
            }
            acc.value()
        });
        if let Some(err) = failure.into_inner().unwrap() {
            return Err(err);
        }
        let amp = (TWO_PI * m as f64).powf((u.re - 2.0 * w as f64).max(0.0));
        let tail = crate::engine::tail_heuristic(amp, u.re - w as f64, c_max);
        Ok(self.value(v, tail, c_max))
    }
}

/// `D^w_{G, p|q, m}(s)` through the Hurwitz zeta route.
pub fn dirichlet_d(
    spec: &GroupSpec,
    p: Point,
    q: Point,
    m: i64,
    w: i64,
    s: Complex64,
    c_max: i64,
) -> Result<CoeffValue> {
    CoeffEngine::new(spec, p, q)?.dirichlet(w, m, s, c_max)
}
