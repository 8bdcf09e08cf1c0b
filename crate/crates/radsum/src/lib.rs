//! Rademacher sums evaluated directly at points of the upper half plane.
//!
//! The classical and conjugate sums are summed over the rectangle
//! `0 < c <= K`, `|d| <= K²` in ascending `(c, d)` order. Continued sums with
//! `Re s > 1` converge absolutely; their `d`-sums are completed exactly per
//! double coset, leaving a truncation in `c` only.

mod continued;
mod invariance;
mod rectangle;
mod regularize;

pub use continued::{qs_coefficient_route, qs_continued, ContinuedSums};
pub use invariance::{invariance_residual, DirectEvaluator, Evaluator, SeriesEvaluator};
pub use rectangle::{cs_direct, fractional_direct, rs_direct, RectangleSum};
pub use regularize::{rreg, rreg_phi, treg, tsa_term};

pub use num_complex::Complex64;

use psl2::{GroupSpec, Point};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadsumError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("outside the convergence regime: {0}")]
    Regime(String),
    #[error("outside the evaluator's validity region: {0}")]
    OutOfRegion(String),
    #[error(transparent)]
    Coeff(#[from] coefficients::CoeffError),
    #[error(transparent)]
    Special(#[from] special::SpecialError),
}

impl From<psl2::Psl2Error> for RadsumError {
    fn from(e: psl2::Psl2Error) -> Self {
        RadsumError::Coeff(e.into())
    }
}

pub type Result<T> = std::result::Result<T, RadsumError>;

/// Below this height the rectangle sums still converge, but slowly.
pub const SLOW_IM: f64 = 0.05;

/// Order of a Rademacher sum: an integer `m`, or `g / h` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Integer(i64),
    Fraction { g: i64, h: i64 },
}

impl Order {
    /// `(g, h)` with `h = 1` for integer orders.
    pub fn parts(self) -> (i64, i64) {
        match self {
            Order::Integer(m) => (m, 1),
            Order::Fraction { g, h } => (g, h),
        }
    }
}

/// Everything needed to evaluate one Rademacher sum at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalParams {
    pub spec: GroupSpec,
    pub p: Point,
    pub q: Point,
    /// Weight index; the weight is `2 s`.
    pub s: i64,
    pub order: Order,
    pub z: Complex64,
    /// Rectangle bound.
    pub k: f64,
    /// Continuation variable of the continued sums.
    pub s_cont: Complex64,
}

impl EvalParams {
    /// Weight 0, order `m`, both cusps at infinity, `s_cont = 1`.
    pub fn new(spec: GroupSpec, m: i64, z: Complex64, k: f64) -> EvalParams {
        EvalParams {
            spec,
            p: Point::Infinity,
            q: Point::Infinity,
            s: 0,
            order: Order::Integer(m),
            z,
            k,
            s_cont: Complex64::new(1.0, 0.0),
        }
    }

    pub fn at_cusps(mut self, p: Point, q: Point) -> EvalParams {
        self.p = p;
        self.q = q;
        self
    }

    pub fn with_weight(mut self, s: i64) -> EvalParams {
        self.s = s;
        self
    }

    pub fn with_s_cont(mut self, u: Complex64) -> EvalParams {
        self.s_cont = u;
        self
    }

    pub fn with_fraction(mut self, g: i64, h: i64) -> EvalParams {
        self.order = Order::Fraction { g, h };
        self
    }

    pub fn with_z(mut self, z: Complex64) -> EvalParams {
        self.z = z;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.z.im.is_nan() || self.z.im <= 0.0 || !self.z.re.is_finite() {
            return Err(RadsumError::InvalidInput(format!(
                "z = {} is not in H",
                self.z
            )));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(RadsumError::InvalidInput(format!(
                "K = {} must be positive",
                self.k
            )));
        }
        if self.s > 0 {
            return Err(RadsumError::Unsupported(format!(
                "weight index {} > 0 is only available through coefficients",
                self.s
            )));
        }
        match self.order {
            Order::Integer(m) if m < 1 => Err(RadsumError::InvalidInput(format!(
                "order {m} must be positive"
            ))),
            Order::Fraction { g, h } if g < 1 || h < 1 || psl2::arith::gcd(g, h) != 1 => Err(
                RadsumError::InvalidInput(format!("order {g}/{h} must be positive and reduced")),
            ),
            _ => Ok(()),
        }
    }
}
