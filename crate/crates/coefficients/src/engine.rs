//! Ordered, chunk-parallel summation over double cosets.

use crate::bessel::{bessel_factor, bessel_factor_continued};
use crate::kloosterman::{kl_phase_sum, kloosterman_power};
use crate::{CoeffError, Result};
use num_complex::Complex64;
use num_rational::Ratio;
use psl2::{CosetSet, Cusp, DoubleCosetKey, Group, GroupElement, GroupSpec, Point};
use rayon::prelude::*;
use special::KahanSum;

const CHUNK: i64 = 64;

/// A coefficient request for `fc^s_{G, p|q}(m, n)`, weight `2s`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffQuery {
    pub spec: GroupSpec,
    pub p: Point,
    pub q: Point,
    pub s: i64,
    pub m: i64,
    pub n: i64,
    pub c_max: i64,
}

impl CoeffQuery {
    pub fn new(spec: GroupSpec, s: i64, m: i64, n: i64, c_max: i64) -> CoeffQuery {
        CoeffQuery {
            spec,
            p: Point::Infinity,
            q: Point::Infinity,
            s,
            m,
            n,
            c_max,
        }
    }

    pub fn at_cusps(mut self, p: Point, q: Point) -> CoeffQuery {
        self.p = p;
        self.q = q;
        self
    }

    /// `s >= 1` with `m <= -1`, or `s <= 0` with `m >= 1`.
    pub fn in_standard_regime(&self) -> bool {
        (self.s >= 1 && self.m <= -1) || (self.s <= 0 && self.m >= 1)
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(CoeffError::InvalidInput("order m must be nonzero".into()));
        }
        if self.c_max < 1 {
            return Err(CoeffError::InvalidInput("c_max must be positive".into()));
        }
        Ok(())
    }
}

/// A truncated coefficient with its heuristic tail.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffValue {
    pub value: Complex64,
    /// Weil-bound heuristic for the omitted `c > c_max` part; not a proof.
    pub tail_estimate: f64,
    pub c_max_used: i64,
    /// Scaling elements at `p` and `q` that fix the normalization.
    pub sigma_p: GroupElement,
    pub sigma_q: GroupElement,
}

/// Double coset stream for one group and cusp pair, with the summation kernels.
#[derive(Clone, Debug)]
pub struct CoeffEngine {
    spec: GroupSpec,
    set: CosetSet,
}

impl CoeffEngine {
    pub fn new(spec: &GroupSpec, p: Point, q: Point) -> Result<CoeffEngine> {
        let group = Group::new(spec.clone())?;
        let set = CosetSet::new(&group, p, q)?;
        Ok(CoeffEngine {
            spec: spec.clone(),
            set,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn cusp_p(&self) -> Cusp {
        self.set.cusp_p()
    }

    pub fn cusp_q(&self) -> Cusp {
        self.set.cusp_q()
    }

    /// Whether `p` and `q` are the same cusp, so that the identity coset contributes.
    pub fn same_cusp(&self) -> bool {
        self.set.contains_identity()
    }

    pub fn keys_with_c(&self, c: i64) -> Vec<DoubleCosetKey> {
        self.set.keys_with_c(c)
    }

    /// `sum_{c <= c_max} f(c, keys with that c)`, parallel over fixed chunks of `c`
    /// and reduced in ascending order, so results do not depend on the thread count.
    pub fn sum_over_c<F>(&self, c_max: i64, f: F) -> Complex64
    where
        F: Fn(i64, &[DoubleCosetKey]) -> Complex64 + Sync,
    {
        self.sum_over_c_many(c_max, 1, |c, keys, out| out[0] = f(c, keys))[0]
    }

    /// Vector-valued form of [`CoeffEngine::sum_over_c`]: `f` fills one slot per output.
    pub fn sum_over_c_many<F>(&self, c_max: i64, len: usize, f: F) -> Vec<Complex64>
    where
        F: Fn(i64, &[DoubleCosetKey], &mut [Complex64]) + Sync,
    {
        let chunks = (c_max.max(0) + CHUNK - 1) / CHUNK;
        let partial: Vec<Vec<KahanSum>> = (0..chunks)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![KahanSum::new(); len];
                let mut slot = vec![Complex64::new(0.0, 0.0); len];
                for c in (i * CHUNK + 1)..=((i + 1) * CHUNK).min(c_max) {
                    let keys = self.set.keys_with_c(c);
                    if keys.is_empty() {
                        continue;
                    }
                    slot.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
                    f(c, &keys, &mut slot);
                    for (a, x) in acc.iter_mut().zip(&slot) {
                        a.add(*x);
                    }
                }
                acc
            })
            .collect();
        let mut total = vec![KahanSum::new(); len];
        for p in &partial {
            for (t, x) in total.iter_mut().zip(p) {
                t.merge(x);
            }
        }
        total.iter().map(KahanSum::value).collect()
    }

    pub(crate) fn value(&self, value: Complex64, tail: f64, c_max: i64) -> CoeffValue {
        let (sigma_p, sigma_q) = self.set.scaling_elements();
        CoeffValue {
            value,
            tail_estimate: tail,
            c_max_used: c_max,
            sigma_p,
            sigma_q,
        }
    }

    /// Partial Selberg-Kloosterman zeta function `sum_{c <= c_max} Kl(m, n, s)`.
    pub fn sk_zeta(&self, m: i64, n: i64, s: Complex64, c_max: i64) -> CoeffValue {
        let v = self.sum_over_c(c_max, |c, keys| {
            let mut out = Complex64::new(0.0, 0.0);
            for group in by_pdet(keys) {
                let rho = group[0].pdet as f64 / (c as f64 * c as f64);
                out += kl_phase_sum(group, m, n) * kloosterman_power(rho, s);
            }
            out
        });
        let tail = tail_heuristic(1.0, s.re, c_max);
        self.value(v, tail, c_max)
    }

    /// `fc^s(m, n) = sum Kl(m, n, s) Bf^s(m, n)` truncated at `c <= c_max`.
    pub fn fc(&self, s: i64, m: i64, n: i64, c_max: i64) -> CoeffValue {
        let v = self.fc_raw(s, m, n, c_max);
        let (amp, sigma) = leading_amplitude(s, m, n);
        self.value(v, tail_heuristic(amp, sigma, c_max), c_max)
    }

    /// The sum without metadata.
    pub fn fc_raw(&self, s: i64, m: i64, n: i64, c_max: i64) -> Complex64 {
        self.fc_many(s, &[(m, n)], c_max)[0]
    }

    /// `fc^s(m, n)` for several `(m, n)` sharing one pass over the double cosets.
    pub fn fc_many(&self, s: i64, pairs: &[(i64, i64)], c_max: i64) -> Vec<Complex64> {
        self.sum_over_c_many(c_max, pairs.len(), |c, keys, out| {
            for group in by_pdet(keys) {
                let pdet = group[0].pdet;
                let rho = Ratio::new(pdet, c * c);
                let rho_s = (pdet as f64 / (c as f64 * c as f64)).powi(s as i32);
                for (slot, &(m, n)) in out.iter_mut().zip(pairs) {
                    let bf = bessel_factor(rho, m, n, s);
                    if bf != 0.0 {
                        *slot += kl_phase_sum(group, m, n) * rho_s * bf;
                    }
                }
            }
        })
    }

    /// Continued coefficient `fc^s(m, n, u)` for `s <= 0`, `m, n >= 1`.
    pub fn fc_continued(&self, s: i64, m: i64, n: i64, u: Complex64, c_max: i64) -> CoeffValue {
        let v = self.sum_over_c(c_max, |c, keys| {
            let mut out = Complex64::new(0.0, 0.0);
            for group in by_pdet(keys) {
                let rho = group[0].pdet as f64 / (c as f64 * c as f64);
                let bf = bessel_factor_continued(rho, m, n, s, u);
                out += kl_phase_sum(group, m, n) * rho.powi(s as i32) * bf;
            }
            out
        });
        let (amp, _) = leading_amplitude(s, m, n);
        self.value(v, tail_heuristic(amp, u.re - s as f64, c_max), c_max)
    }
}

/// Consecutive runs of equal `pdet` (keys are sorted by `pdet` first).
fn by_pdet(keys: &[DoubleCosetKey]) -> impl Iterator<Item = &[DoubleCosetKey]> {
    keys.chunk_by(|a, b| a.pdet == b.pdet)
}

/// Magnitude and decay exponent `sigma` of the leading term of `Kl Bf`, which
/// behaves like `amp * c^(-2 sigma)`.
fn leading_amplitude(s: i64, m: i64, n: i64) -> (f64, f64) {
    let fps = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    let fact = |j: i64| (1..=j).map(|i| i as f64).product::<f64>();
    if s >= 1 {
        let j = 2 * s - 1;
        (
            fps.powi(s as i32) * (n.abs() as f64).powi(j as i32) / fact(j),
            s as f64,
        )
    } else {
        let j = 1 - 2 * s;
        (
            fps.powi((1 - s) as i32) * (m.abs() as f64).powi(j as i32) / fact(j),
            (1 - s) as f64,
        )
    }
}

/// `amp * sum_{c > C} log(c) sqrt(c) c^(-2 sigma)`, approximated by the integral.
pub(crate) fn tail_heuristic(amp: f64, sigma: f64, c_max: i64) -> f64 {
    let beta = 2.0 * sigma - 0.5;
    if beta <= 1.0 {
        return f64::INFINITY;
    }
    let c = c_max as f64;
    let b1 = beta - 1.0;
    amp * c.powf(-b1) * (c.ln().max(1.0) / b1 + 1.0 / (b1 * b1))
}

/// Partial Selberg-Kloosterman zeta function for `G` at cusps `p`, `q`.
pub fn sk_zeta(
    spec: &GroupSpec,
    p: Point,
    q: Point,
    m: i64,
    n: i64,
    s: Complex64,
    c_max: i64,
) -> Result<CoeffValue> {
    Ok(CoeffEngine::new(spec, p, q)?.sk_zeta(m, n, s, c_max))
}

/// `fc^s_{G, p|q}(m, n)` for the query.
pub fn fc(query: &CoeffQuery) -> Result<CoeffValue> {
    query.validate()?;
    let engine = CoeffEngine::new(&query.spec, query.p, query.q)?;
    Ok(engine.fc(query.s, query.m, query.n, query.c_max))
}

/// Continued coefficient `fc^s(m, n, u)`; needs `s <= 0`, `m, n >= 1` and `Re u >= 1`.
pub fn fc_continued(query: &CoeffQuery, u: Complex64) -> Result<CoeffValue> {
    query.validate()?;
    if query.s > 0 || query.m < 1 || query.n < 1 || u.re < 1.0 {
        return Err(CoeffError::InvalidInput(
            "continued coefficients need s <= 0, m, n >= 1 and Re u >= 1".into(),
        ));
    }
    let engine = CoeffEngine::new(&query.spec, query.p, query.q)?;
    Ok(engine.fc_continued(query.s, query.m, query.n, u, query.c_max))
}
