//! Classical q-expansions computed in exact integer arithmetic.

use crate::{divisors, LaurentSeries, Result, SeriesError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `prod_{n >= 1} (1 - q^n) + O(q^trunc)` from Euler's pentagonal theorem.
pub fn eta_product(trunc: i64) -> LaurentSeries {
    let trunc = trunc.max(1);
    let mut c = vec![BigInt::zero(); trunc as usize];
    let mut k: i64 = 0;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 >= trunc {
            break;
        }
        c[p1 as usize] += sign;
        if k > 0 && p2 < trunc {
            c[p2 as usize] += sign;
        }
        k += 1;
    }
    LaurentSeries::from_bigints(0, c)
}

/// `sum p(n) q^n + O(q^trunc)`.
pub fn partitions(trunc: i64) -> LaurentSeries {
    eta_product(trunc)
        .inverse()
        .expect("eta product has unit constant")
}

/// `prod eta(d z)^r + constant`, exact with `trunc` known exponents beyond the leading one.
///
/// The net power `sum d r / 24` must be an integer.
pub fn eta_quotient(factors: &[(u64, i64)], constant: i64, trunc: i64) -> Result<LaurentSeries> {
    let weight: i64 = factors.iter().map(|&(d, r)| d as i64 * r).sum();
    if weight % 24 != 0 {
        return Err(SeriesError::Unsupported(format!(
            "leading exponent {weight}/24 is not integral"
        )));
    }
    if factors.iter().any(|&(d, _)| d == 0) {
        return Err(SeriesError::InvalidInput(
            "dilation must be positive".into(),
        ));
    }
    let lead = weight / 24;
    let inner = trunc.max(1) + 1;
    let mut acc = LaurentSeries::constant(BigRational::from_integer(1.into()), inner);
    for &(d, r) in factors {
        let base = eta_product(inner.div_euclid(d as i64) + 1).scale_q(d as i64);
        acc = acc.mul_series(&base.pow(r)?).truncate(inner);
    }
    let mut out = acc.truncate(trunc.max(1)).shift(lead);
    if constant != 0 {
        let c = LaurentSeries::constant(BigRational::from_integer(constant.into()), out.prec());
        out = &out + &c;
    }
    Ok(out)
}

/// `Delta = q prod (1 - q^n)^24`, known for exponents `< trunc`.
pub fn delta(trunc: i64) -> LaurentSeries {
    eta_product(trunc - 1).pow(24).unwrap().shift(1)
}

/// Ramanujan's `tau(n)` from the `eta^24` expansion.
pub fn tau(n: u64) -> BigInt {
    delta(n as i64 + 1).int_coeff(n as i64)
}

fn eisenstein(k: u32, scale: i64, trunc: i64) -> LaurentSeries {
    let mut c = vec![BigInt::zero(); trunc.max(1) as usize];
    c[0] = BigInt::from(1);
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        let s: BigInt = divisors(n as u64)
            .iter()
            .map(|&d| BigInt::from(d).pow(k))
            .sum();
        *slot = s * scale;
    }
    LaurentSeries::from_bigints(0, c)
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(trunc: i64) -> LaurentSeries {
    eisenstein(3, 240, trunc)
}

/// `E6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein_e6(trunc: i64) -> LaurentSeries {
    eisenstein(5, -504, trunc)
}

fn delta_ratio(numer: &LaurentSeries, shift: i64, trunc: i64) -> LaurentSeries {
    let d = delta(trunc + 2);
    let r = numer.mul_series(&d.inverse().unwrap());
    let c = LaurentSeries::constant(BigRational::from_integer(shift.into()), trunc);
    (&r + &c).truncate(trunc)
}

/// Normalized `J = E4^3 / Delta - 744`, known for exponents `< trunc`.
pub fn j_series(trunc: i64) -> LaurentSeries {
    let e4 = eisenstein_e4(trunc + 2);
    delta_ratio(&e4.pow(3).unwrap(), -744, trunc)
}

/// `J` through the second route `E6^2 / Delta + 984`.
pub fn j_series_via_e6(trunc: i64) -> LaurentSeries {
    let e6 = eisenstein_e6(trunc + 2);
    delta_ratio(&e6.pow(2).unwrap(), 984, trunc)
}
