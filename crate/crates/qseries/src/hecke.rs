//! Weight-zero Hecke operators and Faber polynomials.

use crate::{LaurentSeries, Result, SeriesError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `n T(n) f`, whose `q^k` coefficient is `sum_{a | gcd(n, k)} (n / a) c(n k / a^2)`.
pub fn hecke_scaled(n: u64, f: &LaurentSeries) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(SeriesError::InvalidInput(
            "Hecke index must be positive".into(),
        ));
    }
    let n = n as i64;
    let lo = f.valuation().unwrap_or(f.lo()) * n;
    let prec = Integer::div_floor(&(f.prec() - 1), &n) + 1;
    let lo = lo.min(prec);
    let mut coeffs = Vec::with_capacity((prec - lo).max(0) as usize);
    for k in lo..prec {
        let g = n.gcd(&k.abs());
        let mut acc = BigRational::zero();
        for a in 1..=g {
            if g % a != 0 {
                continue;
            }
            let idx = n * k / (a * a);
            let c = f.coeff(idx).expect("index within truncation");
            if !c.is_zero() {
                acc += c * BigInt::from(n / a);
            }
        }
        coeffs.push(acc);
    }
    Ok(LaurentSeries::new(lo, coeffs))
}

/// `T(n) f = (1/n) sum_{ad = n, 0 <= b < d} f((a z + b) / d)`.
pub fn hecke_t(n: u64, f: &LaurentSeries) -> Result<LaurentSeries> {
    let g = hecke_scaled(n, f)?;
    Ok(g.scale(&BigRational::new(BigInt::one(), BigInt::from(n))))
}

/// `T(n) f` for a series attached to level `level`; only `gcd(n, level) = 1` is supported.
pub fn hecke_t_level(n: u64, level: u64, f: &LaurentSeries) -> Result<LaurentSeries> {
    if n.gcd(&level) != 1 {
        return Err(SeriesError::Unsupported(format!(
            "Hecke operator T({n}) at level {level} needs gcd(n, level) = 1"
        )));
    }
    hecke_t(n, f)
}

/// Monic `F_m` with `F_m(f) = q^-m + O(q)`; coefficient `i` multiplies `X^i`.
pub fn faber(m: u32, f: &LaurentSeries) -> Result<Vec<BigRational>> {
    if m == 0 {
        return Err(SeriesError::InvalidInput(
            "Faber index must be positive".into(),
        ));
    }
    if f.valuation() != Some(-1) || f.coeff(-1) != Some(BigRational::one()) {
        return Err(SeriesError::InvalidInput(
            "series must start with q^-1".into(),
        ));
    }
    if f.coeff(0).map_or(true, |c| !c.is_zero()) {
        return Err(SeriesError::InvalidInput(
            "series must have constant term 0".into(),
        ));
    }
    let m = m as i64;
    if f.prec() < m {
        return Err(SeriesError::Truncation(format!(
            "need precision at least {m}, have {}",
            f.prec()
        )));
    }
    let mut powers = vec![LaurentSeries::constant(BigRational::one(), f.prec() + 1)];
    for _ in 0..m {
        let next = powers.last().unwrap().mul_series(f);
        powers.push(next);
    }
    let mut poly = vec![BigRational::zero(); m as usize + 1];
    poly[m as usize] = BigRational::one();
    let mut current = powers[m as usize].clone();
    for k in (0..m).rev() {
        let c = current.coeff(-k).unwrap();
        if !c.is_zero() {
            current = &current - &powers[k as usize].scale(&c);
            poly[k as usize] = -c;
        }
    }
    Ok(poly)
}

/// `sum poly[i] f^i`.
pub fn eval_polynomial(poly: &[BigRational], f: &LaurentSeries) -> LaurentSeries {
    let mut acc: Option<LaurentSeries> = None;
    for c in poly.iter().rev() {
        let term = LaurentSeries::constant(c.clone(), f.prec() + 1);
        acc = Some(match acc {
            None => term,
            Some(a) => &a.mul_series(f) + &term,
        });
    }
    acc.unwrap_or_else(|| LaurentSeries::zero(f.prec()))
}
