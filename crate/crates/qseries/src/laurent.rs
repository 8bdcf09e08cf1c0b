//! Laurent series in `q` with exact rational coefficients.

use crate::{Result, SeriesError};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_{k = lo}^{prec - 1} c_k q^k + O(q^prec)`.
///
/// Coefficients at exponents `>= prec` are unknown; arithmetic propagates the
/// smallest valid truncation.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    lo: i64,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentSeries {
    /// Series with coefficients `coeffs[k]` at `q^(lo + k)` and precision `lo + coeffs.len()`.
    pub fn new(lo: i64, coeffs: Vec<BigRational>) -> LaurentSeries {
        LaurentSeries { lo, coeffs }
    }

    pub fn from_ints(lo: i64, coeffs: &[i64]) -> LaurentSeries {
        Self::new(lo, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(lo: i64, coeffs: Vec<BigInt>) -> LaurentSeries {
        Self::new(
            lo,
            coeffs.into_iter().map(BigRational::from_integer).collect(),
        )
    }

    /// The zero series `O(q^prec)`.
    pub fn zero(prec: i64) -> LaurentSeries {
        Self::new(prec, Vec::new())
    }

    /// The constant `c + O(q^prec)`.
    pub fn constant(c: BigRational, prec: i64) -> LaurentSeries {
        Self::monomial(c, 0, prec)
    }

    /// `c q^k + O(q^prec)`.
    pub fn monomial(c: BigRational, k: i64, prec: i64) -> LaurentSeries {
        if k >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![BigRational::zero(); (prec - k) as usize];
        coeffs[0] = c;
        Self::new(k, coeffs)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Exponents `< prec` are known.
    pub fn prec(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    /// Coefficient of `q^k`, or `None` when `k >= prec`.
    pub fn coeff(&self, k: i64) -> Option<BigRational> {
        if k >= self.prec() {
            None
        } else if k < self.lo {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(k - self.lo) as usize].clone())
        }
    }

    /// Coefficient of `q^k` as an integer; panics if unknown or non-integral.
    pub fn int_coeff(&self, k: i64) -> BigInt {
        let c = self.coeff(k).expect("coefficient beyond truncation");
        assert!(c.is_integer(), "non-integral coefficient");
        c.to_integer()
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lo + i as i64)
    }

    /// Drops leading zeros.
    pub fn normalized(mut self) -> LaurentSeries {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..skip);
        self.lo += skip as i64;
        self
    }

    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        let prec = prec.min(self.prec());
        let keep = (prec - self.lo).max(0) as usize;
        let lo = self.lo.min(prec);
        LaurentSeries::new(lo, self.coeffs[..keep.min(self.coeffs.len())].to_vec())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries::new(self.lo + k, self.coeffs.clone())
    }

    pub fn scale(&self, c: &BigRational) -> LaurentSeries {
        LaurentSeries::new(self.lo, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `f(q^k)` for `k >= 1`.
    pub fn scale_q(&self, k: i64) -> LaurentSeries {
        assert!(k >= 1, "scale_q needs a positive factor");
        let prec = k * self.prec();
        let lo = k * self.lo;
        let mut coeffs = vec![BigRational::zero(); (prec - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        LaurentSeries::new(lo, coeffs)
    }

    /// `q d/dq`.
    pub fn theta(&self) -> LaurentSeries {
        LaurentSeries::new(
            self.lo,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(self.lo + i as i64))
                .collect(),
        )
    }

    fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Product with truncation `min(lo1 + prec2, lo2 + prec1)`.
    pub fn mul_series(&self, other: &LaurentSeries) -> LaurentSeries {
        let lo = self.lo + other.lo;
        let prec = (self.lo + other.prec()).min(other.lo + self.prec());
        let len = (prec - lo).max(0) as usize;
        if self.is_integral() && other.is_integral() {
            let a: Vec<BigInt> = self.coeffs.iter().map(|c| c.to_integer()).collect();
            let b: Vec<BigInt> = other.coeffs.iter().map(|c| c.to_integer()).collect();
            let mut out = vec![BigInt::zero(); len];
            for (i, x) in a.iter().enumerate().take(len) {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate().take(len - i) {
                    out[i + j] += x * y;
                }
            }
            return LaurentSeries::from_bigints(lo, out);
        }
        let mut out = vec![BigRational::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        LaurentSeries::new(lo, out)
    }

    /// Multiplicative inverse; the valuation coefficient must be nonzero.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        let f = self.clone().normalized();
        let v = f.lo;
        if f.coeffs.is_empty() {
            return Err(SeriesError::NotInvertible("series is O(q^prec)".into()));
        }
        let n = f.coeffs.len();
        let lead_inv = f.coeffs[0].recip();
        let mut g = vec![BigRational::zero(); n];
        g[0] = lead_inv.clone();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !f.coeffs[j].is_zero() {
                    acc += &f.coeffs[j] * &g[k - j];
                }
            }
            g[k] = -acc * &lead_inv;
        }
        Ok(LaurentSeries::new(-v, g))
    }

    /// Integer power (negative powers through the inverse).
    pub fn pow(&self, k: i64) -> Result<LaurentSeries> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<LaurentSeries> = None;
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul_series(&b),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_series(&b);
            }
        }
        Ok(acc.unwrap_or_else(|| LaurentSeries::constant(BigRational::one(), self.one_prec())))
    }

    /// Precision of `f^0` that is consistent with `f`: `prec - valuation`.
    fn one_prec(&self) -> i64 {
        self.prec() - self.valuation().unwrap_or(self.lo)
    }

    /// JSON object `{"lo", "prec", "coeffs"}` with decimal-string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lo": self.lo,
            "prec": self.prec(),
            "coeffs": self.coeff_strings(),
        })
    }

    /// `exp(f)` for `f` with positive valuation.
    pub fn exp(&self) -> Result<LaurentSeries> {
        let f = self.clone();
        if f.lo < 1
            && f.coeffs
                .iter()
                .take((1 - f.lo) as usize)
                .any(|c| !c.is_zero())
        {
            return Err(SeriesError::InvalidInput(
                "exp needs positive valuation".into(),
            ));
        }
        let prec = f.prec();
        if prec <= 0 {
            return Ok(LaurentSeries::zero(prec));
        }
        // g' = f' g, i.e. k g_k = sum_j j f_j g_{k-j}
        let n = prec as usize;
        let fc: Vec<BigRational> = (0..n as i64).map(|k| f.coeff(k).unwrap()).collect();
        let mut g = vec![BigRational::zero(); n];
        g[0] = BigRational::one();
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !fc[j].is_zero() {
                    acc += &fc[j] * rat(j as i64) * &g[k - j];
                }
            }
            g[k] = acc / rat(k as i64);
        }
        Ok(LaurentSeries::new(0, g))
    }

    /// `log(f)` for `f = 1 + O(q)`.
    pub fn log(&self) -> Result<LaurentSeries> {
        if self.coeff(0) != Some(BigRational::one())
            || (self.lo..0).any(|k| !self.coeff(k).unwrap().is_zero())
        {
            return Err(SeriesError::InvalidInput("log needs f = 1 + O(q)".into()));
        }
        let prec = self.prec();
        let n = prec as usize;
        let fc: Vec<BigRational> = (0..n as i64).map(|k| self.coeff(k).unwrap()).collect();
        // k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
        let mut g = vec![BigRational::zero(); n];
        for k in 1..n {
            let mut acc = &fc[k] * rat(k as i64);
            for j in 1..k {
                if !fc[k - j].is_zero() {
                    acc -= rat(j as i64) * &g[j] * &fc[k - j];
                }
            }
            g[k] = acc / rat(k as i64);
        }
        Ok(LaurentSeries::new(0, g))
    }

    /// Numerical value at `q` (truncated sum).
    pub fn eval(&self, q: Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        let mut qk = q.powi(self.lo as i32);
        for c in &self.coeffs {
            if !c.is_zero() {
                total += qk * to_f64(c);
            }
            qk *= q;
        }
        total
    }

    /// Value at `z` in the upper half plane, `q = e(z)`.
    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp();
        self.eval(q)
    }

    /// Coefficients as decimal strings, from `lo` to `prec - 1`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

pub(crate) fn to_f64(c: &BigRational) -> f64 {
    if c.denom().is_one() {
        return c.numer().to_f64().unwrap_or(f64::NAN);
    }
    let n = c.numer().to_f64();
    let d = c.denom().to_f64();
    match (n, d) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let bits = c.numer().bits().max(c.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (c.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (c.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            if c.is_negative() && n > 0.0 {
                -n / d
            } else {
                n / d
            }
        }
    }
}

/// Equal truncation and equal known coefficients; leading zeros are ignored.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &LaurentSeries) -> bool {
        self.prec() == other.prec()
            && (self.lo.min(other.lo)..self.prec()).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl Eq for LaurentSeries {}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let lo = self.lo.min(rhs.lo);
        let prec = self.prec().min(rhs.prec());
        let coeffs = (lo..prec)
            .map(|k| self.coeff(k).unwrap() + rhs.coeff(k).unwrap())
            .collect();
        LaurentSeries::new(lo.min(prec), coeffs)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::new(self.lo, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_series(rhs)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})q^{}", self.lo + i as i64)?;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.prec())
    }
}
