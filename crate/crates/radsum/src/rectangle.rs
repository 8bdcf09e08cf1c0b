//! Rectangle partial sums of the classical, conjugate and fractional sums at weight 0.

use crate::regularize::top_phase;
use crate::{EvalParams, RadsumError, Result, SLOW_IM};
use num_complex::Complex64;
use psl2::{CosetRow, CosetSet, Group};
use rayon::prelude::*;
use special::{e, KahanSum};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const STRIPE: i64 = 4;

/// A rectangle partial sum together with the sum over the rectangle of half the size.
#[derive(Clone, Debug, PartialEq)]
pub struct RectangleSum {
    pub value: Complex64,
    /// The same sum at `K / 2`, for judging convergence.
    pub half_value: Complex64,
    pub k: f64,
    pub rows: u64,
    /// Set when `Im z` is below [`SLOW_IM`].
    pub warn_slow: bool,
}

impl RectangleSum {
    /// `|S(K) - S(K/2)|`.
    pub fn half_step_change(&self) -> f64 {
        (self.value - self.half_value).norm()
    }
}

/// `e(x) - 1` without cancellation for small `x`.
fn e_minus_one(x: Complex64) -> Complex64 {
    let a = -TWO_PI * x.im;
    let (sh, ch) = (std::f64::consts::PI * x.re).sin_cos();
    let em1 = a.exp_m1();
    let cos = 1.0 - 2.0 * sh * sh;
    Complex64::new(em1 * cos - 2.0 * sh * sh, (em1 + 1.0) * 2.0 * sh * ch)
}

/// Rows with the given `c` and `|d| <= d_max` in ascending `(d, a, pdet)` order,
/// each paired with its `h` unfolded phases `e(-mu (a + j c) / c)`.
fn for_each_row(
    set: &CosetSet,
    c: i64,
    d_max: i64,
    mu: f64,
    h: i64,
    mut f: impl FnMut(&CosetRow, &[Complex64]),
) {
    let mut keys: Vec<(CosetRow, Vec<Complex64>)> = set
        .keys_with_c(c)
        .into_iter()
        .map(|k| {
            let row = CosetRow {
                c,
                d: k.d.rem_euclid(c),
                a: k.a,
                pdet: k.pdet,
            };
            let phases = (0..h)
                .map(|j| {
                    top_phase(
                        mu,
                        &CosetRow {
                            a: row.a + j * c,
                            ..row
                        },
                    )
                })
                .collect();
            (row, phases)
        })
        .collect();
    keys.sort_by_key(|(r, _)| (r.d, r.a, r.pdet));
    let mut base = -d_max - (-d_max).rem_euclid(c);
    while base <= d_max {
        for (row, phases) in &keys {
            let d = base + row.d;
            if d.abs() <= d_max {
                f(&CosetRow { d, ..*row }, phases);
            }
        }
        base += c;
    }
}

#[derive(Clone, Default)]
struct Stripe {
    full: KahanSum,
    half: KahanSum,
    rows: u64,
}

fn sweep(params: &EvalParams, conjugate: bool) -> Result<RectangleSum> {
    params.validate()?;
    if params.s != 0 {
        return Err(RadsumError::Unsupported(
            "direct rectangle sums are evaluated at weight 0 only".into(),
        ));
    }
    let (g, h) = params.order.parts();
    let mu = g as f64 / h as f64;
    let group = Group::new(params.spec.clone())?;
    let set = CosetSet::new(&group, params.p, params.q)?;
    let z = if conjugate { params.z.conj() } else { params.z };
    let k = params.k;
    let (c_max, d_max) = (k.floor() as i64, (k * k).floor() as i64);
    let (c_half, d_half) = ((k / 2.0).floor() as i64, (k * k / 4.0).floor() as i64);

    let stripes: Vec<Stripe> = (0..(c_max + STRIPE - 1) / STRIPE)
        .into_par_iter()
        .map(|i| {
            let mut st = Stripe::default();
            for c in (i * STRIPE + 1)..=((i + 1) * STRIPE).min(c_max) {
                for_each_row(&set, c, d_max, mu, h, |row, phases| {
                    let inner = c <= c_half && row.d.abs() <= d_half;
                    let w = z + row.d as f64 / c as f64;
                    let base = e_minus_one(mu * row.rho() / w);
                    for phase in phases {
                        let term = phase * base;
                        st.full.add(term);
                        if inner {
                            st.half.add(term);
                        }
                    }
                    st.rows += h as u64;
                });
            }
            st
        })
        .collect();

    let mut full = KahanSum::new();
    let mut half = KahanSum::new();
    if set.contains_identity() {
        for j in 0..h {
            let t = e(-mu * (z + j as f64));
            full.add(t);
            half.add(t);
        }
    }
    let mut rows = 0;
    for st in &stripes {
        full.merge(&st.full);
        half.merge(&st.half);
        rows += st.rows;
    }
    Ok(RectangleSum {
        value: full.value(),
        half_value: half.value(),
        k,
        rows,
        warn_slow: params.z.im < SLOW_IM,
    })
}

/// Classical Rademacher sum `e(-m z) + sum [e(-m chi z) - e(-m chi inf)]` over the rectangle.
/// Fractional orders `g/h` sum over the `h`-fold unfolding of each row.
pub fn rs_direct(params: &EvalParams) -> Result<RectangleSum> {
    sweep(params, false)
}

/// Conjugate Rademacher sum: the same rectangle sum evaluated at `conj(z)`.
pub fn cs_direct(params: &EvalParams) -> Result<RectangleSum> {
    sweep(params, true)
}

/// Rectangle sum of order `g/h` over the cosets of `B(hZ)` at the pair `inf|inf`.
pub fn fractional_direct(
    spec: &psl2::GroupSpec,
    g: i64,
    h: i64,
    z: Complex64,
    k: f64,
) -> Result<RectangleSum> {
    rs_direct(&EvalParams::new(spec.clone(), 1, z, k).with_fraction(g, h))
}
