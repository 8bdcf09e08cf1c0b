//! Graded dimensions of Verma modules, the series `Z`, and the denominator identity.

use crate::{MoonshineError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qseries::{hecke_scaled, hecke_t, j_series, BiSeries, LaurentSeries};

/// Exp form, product form and `Z` of a normalized series, known for `p^m q^n`
/// with `m <= M` and `n <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GdimBundle {
    /// `exp(sum_{m <= M} T(m) f p^m)`.
    pub exp_form: BiSeries,
    /// `prod (1 - p^m q^n)^(-c(m n))`.
    pub product_form: BiSeries,
    /// `sum m T(m) f p^m`.
    pub z: BiSeries,
    /// `(M, N)`.
    pub truncation: (usize, i64),
}

impl GdimBundle {
    /// Coefficient of `p^m q^n` in the graded dimension.
    pub fn coeff(&self, m: usize, n: i64) -> Result<BigInt> {
        lookup(&self.exp_form, self.truncation, m, n)
    }

    /// Coefficient of `p^m q^n` in `Z`.
    pub fn z_coeff(&self, m: usize, n: i64) -> Result<BigInt> {
        lookup(&self.z, self.truncation, m, n)
    }
}

fn lookup(s: &BiSeries, (max_p, max_q): (usize, i64), m: usize, n: i64) -> Result<BigInt> {
    if m > max_p || n > max_q {
        return Err(MoonshineError::Truncation(format!(
            "p^{m} q^{n} lies beyond the truncation ({max_p}, {max_q})"
        )));
    }
    let c = s.coeff(m, n).expect("within truncation");
    if !c.is_integer() {
        return Err(MoonshineError::Inconsistent(format!(
            "p^{m} q^{n} coefficient {c} is not integral"
        )));
    }
    Ok(c.to_integer())
}

/// Working `q` precision: every product of `M` slices keeps `N + 1` known exponents.
fn working_prec(max_p: usize, max_q: i64) -> i64 {
    max_q + 1 + 2 * max_p as i64
}

fn check_input(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<()> {
    if max_p == 0 || max_q < 0 {
        return Err(MoonshineError::InvalidInput(
            "need M >= 1 and N >= 0".into(),
        ));
    }
    if f.valuation() != Some(-1) || f.coeff(-1) != Some(BigRational::one()) {
        return Err(MoonshineError::InvalidInput(
            "series must start with q^-1".into(),
        ));
    }
    if f.coeff(0).map_or(true, |c| !c.is_zero()) {
        return Err(MoonshineError::InvalidInput(
            "series must have constant term 0".into(),
        ));
    }
    let need = max_p as i64 * (working_prec(max_p, max_q) - 1) + 1;
    if f.prec() < need {
        return Err(MoonshineError::Truncation(format!(
            "(M, N) = ({max_p}, {max_q}) needs the input known below q^{need}, have q^{}",
            f.prec()
        )));
    }
    if (f.lo()..f.prec()).any(|k| !f.coeff(k).unwrap().is_integer()) {
        return Err(MoonshineError::InvalidInput(
            "coefficients must be integers".into(),
        ));
    }
    Ok(())
}

/// Truncates to `(M, N)`, failing if some slice is not known that far.
fn exact_to(s: &BiSeries, max_p: usize, max_q: i64) -> Result<BiSeries> {
    if s.max_p() < max_p || s.q_prec() < max_q + 1 {
        return Err(MoonshineError::Truncation(format!(
            "series known to (p^{}, q^{}) only",
            s.max_p(),
            s.q_prec() - 1
        )));
    }
    Ok(s.truncate(max_p, max_q + 1))
}

fn c_of(f: &LaurentSeries, k: i64) -> BigInt {
    f.int_coeff(k)
}

/// Multiplies `acc` in place by `(1 - p^m q^n)^e`.
fn mul_binomial(acc: &mut [LaurentSeries], m: usize, n: i64, e: &BigInt) {
    if e.is_zero() {
        return;
    }
    let max_p = acc.len() - 1;
    let old = acc.to_vec();
    // (1 - x)^e = sum_k binom(e, k) (-x)^k
    let mut a = BigRational::one();
    for k in 1..=max_p / m {
        let kb = BigInt::from(k);
        a = -a * BigRational::new(e - &kb + 1, kb);
        for p in (m * k)..=max_p {
            let term = old[p - m * k].shift(n * k as i64).scale(&a);
            acc[p] = &acc[p] + &term;
        }
    }
}

fn one_slices(max_p: usize, prec: i64) -> Vec<LaurentSeries> {
    BiSeries::one(max_p, prec).slices().to_vec()
}

/// `prod_{m >= 1, n} (1 - p^m q^n)^(-c(m n))` at working precision.
fn product_form(f: &LaurentSeries, max_p: usize, max_q: i64) -> BiSeries {
    let prec = working_prec(max_p, max_q);
    let mut acc = one_slices(max_p, prec);
    mul_binomial(&mut acc, 1, -1, &-c_of(f, -1));
    for m in 1..=max_p {
        for n in 1..=(max_q + (max_p - m) as i64) {
            mul_binomial(&mut acc, m, n, &-c_of(f, m as i64 * n));
        }
    }
    BiSeries::new(acc)
}

fn log_form(f: &LaurentSeries, max_p: usize, prec: i64, scaled: bool) -> Result<BiSeries> {
    let mut slices = vec![LaurentSeries::zero(prec)];
    for m in 1..=max_p as u64 {
        let s = if scaled {
            hecke_scaled(m, f)?
        } else {
            hecke_t(m, f)?
        };
        slices.push(s.truncate(prec));
    }
    Ok(BiSeries::new(slices))
}

fn exp_working(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<BiSeries> {
    Ok(log_form(f, max_p, working_prec(max_p, max_q), false)?.exp()?)
}

/// Graded dimension in exp and product form, with `Z`, all exact to `(M, N)`.
pub fn verma_gdim(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<GdimBundle> {
    check_input(f, max_p, max_q)?;
    let exp_full = exp_working(f, max_p, max_q)?;
    let exp_form = exact_to(&exp_full, max_p, max_q)?;
    let product = exact_to(&product_form(f, max_p, max_q), max_p, max_q)?;
    if exp_form != product {
        return Err(MoonshineError::Inconsistent(
            "exp form differs from product form".into(),
        ));
    }
    let z = exact_to(
        &log_form(f, max_p, working_prec(max_p, max_q), true)?,
        max_p,
        max_q,
    )?;
    let z_log = exact_to(&exp_full.log()?.p_theta(), max_p, max_q)?;
    if z != z_log {
        return Err(MoonshineError::Inconsistent(
            "Z differs from p d/dp log gdim".into(),
        ));
    }
    Ok(GdimBundle {
        exp_form,
        product_form: product,
        z,
        truncation: (max_p, max_q),
    })
}

/// `Z = sum m T(m) f p^m`, checked against `p d/dp log` of the graded dimension.
pub fn z_series(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<BiSeries> {
    Ok(verma_gdim(f, max_p, max_q)?.z)
}

fn require_j(f: &LaurentSeries) -> Result<()> {
    if *f != j_series(f.prec()) {
        return Err(MoonshineError::Unsupported(
            "denominator identities are implemented for J only; twisted exponents are not available"
                .into(),
        ));
    }
    Ok(())
}

/// `p (J(p) - J(q))` as a bivariate series: `1 + sum c(k) p^(k+1) - p J(q)`.
fn j_difference(f: &LaurentSeries, max_p: usize, prec: i64) -> BiSeries {
    let mut slices = vec![LaurentSeries::constant(BigRational::one(), prec)];
    if max_p >= 1 {
        slices.push(-f);
    }
    for k in 2..=max_p {
        let c = f.coeff(k as i64 - 1).expect("within truncation");
        slices.push(LaurentSeries::constant(c, prec));
    }
    BiSeries::new(slices)
}

/// `p (J(p) - J(q)) gdim - 1`, which vanishes identically.
pub fn denominator_residual(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<BiSeries> {
    check_input(f, max_p, max_q)?;
    require_j(f)?;
    let gdim = exp_working(f, max_p, max_q)?;
    let lhs = &j_difference(f, max_p, working_prec(max_p, max_q)) * &gdim;
    let residual = &lhs - &BiSeries::one(max_p, lhs.q_prec());
    exact_to(&residual, max_p, max_q)
}

/// Both sides of the denominator identity with the factor `1 - p/q` removed.
#[derive(Clone, Debug, PartialEq)]
pub struct DenominatorQuotient {
    /// `p (J(p) - J(q)) / (1 - p/q)`.
    pub from_j: BiSeries,
    /// `prod_{m, n >= 1} (1 - p^m q^n)^(c(m n))`.
    pub product: BiSeries,
}

impl DenominatorQuotient {
    /// Whether the coefficients of `p^a q^b` and `p^b q^a` agree for `a, b <= k`.
    pub fn is_symmetric(&self, k: usize) -> bool {
        (0..=k).all(|a| {
            (0..=k).all(|b| self.from_j.coeff(a, b as i64) == self.from_j.coeff(b, a as i64))
        })
    }
}

pub fn denominator_quotient(
    f: &LaurentSeries,
    max_p: usize,
    max_q: i64,
) -> Result<DenominatorQuotient> {
    check_input(f, max_p, max_q)?;
    require_j(f)?;
    let prec = working_prec(max_p, max_q);
    let mut geometric = one_slices(max_p, prec);
    mul_binomial(&mut geometric, 1, -1, &BigInt::from(-1));
    let from_j = &j_difference(f, max_p, prec) * &BiSeries::new(geometric);
    let mut acc = one_slices(max_p, prec);
    for m in 1..=max_p {
        for n in 1..=max_q {
            mul_binomial(&mut acc, m, n, &c_of(f, m as i64 * n));
        }
    }
    Ok(DenominatorQuotient {
        from_j: exact_to(&from_j, max_p, max_q)?,
        product: exact_to(&BiSeries::new(acc), max_p, max_q)?,
    })
}

/// Whether `Z <= gdim` holds coefficientwise on every computed `p^m q^n`, `m >= 1`.
pub fn fricke_domination(f: &LaurentSeries, max_p: usize, max_q: i64) -> Result<bool> {
    let bundle = verma_gdim(f, max_p, max_q)?;
    for m in 1..=max_p {
        for n in -(m as i64)..=max_q {
            if bundle.z_coeff(m, n)? > bundle.coeff(m, n)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
