//! Series in two variables `p`, `q`: polynomials in `p` (truncated at `p^max_p`)
//! with Laurent series in `q` as coefficients.

use crate::{LaurentSeries, Result, SeriesError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    slices: Vec<LaurentSeries>,
}

impl BiSeries {
    /// `slices[m]` is the coefficient of `p^m`, for `0 <= m <= max_p`.
    pub fn new(slices: Vec<LaurentSeries>) -> BiSeries {
        assert!(!slices.is_empty(), "a bivariate series needs at least p^0");
        BiSeries { slices }
    }

    /// The zero series with every slice `O(q^prec)`.
    pub fn zero(max_p: usize, prec: i64) -> BiSeries {
        BiSeries::new(vec![LaurentSeries::zero(prec); max_p + 1])
    }

    /// `1 + O(p^(max_p + 1), q^prec)`.
    pub fn one(max_p: usize, prec: i64) -> BiSeries {
        let mut s = Self::zero(max_p, prec);
        s.slices[0] = LaurentSeries::constant(BigRational::one(), prec);
        s
    }

    pub fn max_p(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, m: usize) -> &LaurentSeries {
        &self.slices[m]
    }

    pub fn slices(&self) -> &[LaurentSeries] {
        &self.slices
    }

    /// Coefficient of `p^m q^n`, or `None` beyond truncation.
    pub fn coeff(&self, m: usize, n: i64) -> Option<BigRational> {
        self.slices.get(m)?.coeff(n)
    }

    /// The smallest `q` precision across slices.
    pub fn q_prec(&self) -> i64 {
        self.slices.iter().map(LaurentSeries::prec).min().unwrap()
    }

    pub fn truncate(&self, max_p: usize, q_prec: i64) -> BiSeries {
        BiSeries::new(
            self.slices
                .iter()
                .take(max_p + 1)
                .map(|s| s.truncate(q_prec))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> BiSeries {
        BiSeries::new(self.slices.iter().map(|s| s.scale(c)).collect())
    }

    /// `p d/dp`.
    pub fn p_theta(&self) -> BiSeries {
        BiSeries::new(
            self.slices
                .iter()
                .enumerate()
                .map(|(m, s)| s.scale(&BigRational::from_integer(BigInt::from(m))))
                .collect(),
        )
    }

    fn constant_in_p(&self) -> &LaurentSeries {
        &self.slices[0]
    }

    /// `exp(F)` for `F` with vanishing `p^0` slice.
    pub fn exp(&self) -> Result<BiSeries> {
        if !self.constant_in_p().is_zero_to_prec() {
            return Err(SeriesError::InvalidInput("exp needs F = O(p)".into()));
        }
        let prec = self.q_prec();
        let mut total = BiSeries::one(self.max_p(), prec);
        let mut term = BiSeries::one(self.max_p(), prec);
        for k in 1..=self.max_p() {
            term = &term * self;
            term = term.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            total = &total + &term;
        }
        Ok(total)
    }

    /// `log(G)` for `G = 1 + O(p)`.
    pub fn log(&self) -> Result<BiSeries> {
        let c0 = self.constant_in_p();
        let is_one = c0.coeff(0) == Some(BigRational::one())
            && (c0.lo()..c0.prec()).all(|k| k == 0 || c0.coeff(k).unwrap().is_zero());
        if !is_one {
            return Err(SeriesError::InvalidInput("log needs G = 1 + O(p)".into()));
        }
        let prec = self.q_prec();
        let h = self - &BiSeries::one(self.max_p(), c0.prec());
        let mut total = BiSeries::zero(self.max_p(), prec);
        let mut power = BiSeries::one(self.max_p(), prec);
        for k in 1..=self.max_p() {
            power = &power * &h;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total = &total + &power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k)));
        }
        Ok(total)
    }

    /// Whether every known coefficient vanishes.
    pub fn is_zero_to_prec(&self) -> bool {
        self.slices.iter().all(LaurentSeries::is_zero_to_prec)
    }

    /// JSON object with one Laurent series per `p` exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max_p": self.max_p(),
            "q_prec": self.q_prec(),
            "slices": self.slices.iter().map(LaurentSeries::to_json).collect::<Vec<_>>(),
        })
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        let m = self.max_p().min(rhs.max_p());
        BiSeries::new((0..=m).map(|i| &self.slices[i] + &rhs.slices[i]).collect())
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        let m = self.max_p().min(rhs.max_p());
        BiSeries::new((0..=m).map(|i| &self.slices[i] - &rhs.slices[i]).collect())
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let m = self.max_p().min(rhs.max_p());
        let out = (0..=m)
            .map(|k| {
                let mut acc: Option<LaurentSeries> = None;
                for i in 0..=k {
                    let t = self.slices[i].mul_series(&rhs.slices[k - i]);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => &a + &t,
                    });
                }
                acc.unwrap()
            })
            .collect();
        BiSeries::new(out)
    }
}
