//! Preferred representatives of elements of `PGL2+(Q)`.

use crate::{Psl2Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use std::fmt;
use std::ops::Mul;

/// A point of the boundary `Q ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    /// `num / den` in lowest terms with `den > 0`.
    Rational {
        num: i64,
        den: i64,
    },
}

impl Point {
    pub fn rational(num: i64, den: i64) -> Point {
        if den == 0 {
            return Point::Infinity;
        }
        let g = num.gcd(&den).max(1);
        let s = den.signum();
        Point::Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn as_f64(self) -> Option<f64> {
        match self {
            Point::Infinity => None,
            Point::Rational { num, den } => Some(num as f64 / den as f64),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Rational { num, den: 1 } => write!(f, "{num}"),
            Point::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl std::str::FromStr for Point {
    type Err = Psl2Error;

    fn from_str(s: &str) -> Result<Point> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "oo" | "∞") {
            return Ok(Point::Infinity);
        }
        let bad = || Psl2Error::InvalidInput(format!("cannot parse point '{s}'"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Ok(Point::rational(n, d))
            }
            None => Ok(Point::rational(t.parse().map_err(|_| bad())?, 1)),
        }
    }
}

/// Primitive integer matrix `[a b; c d]` with `ad - bc > 0`, normalized so that
/// `c > 0`, or `c = 0` and `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

fn gcd4(v: [i128; 4]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const S: GroupElement = GroupElement {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };
    pub const T: GroupElement = GroupElement {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };

    /// Preferred representative of the projective class of `[a b; c d]`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<GroupElement> {
        Self::from_i128([a as i128, b as i128, c as i128, d as i128])
    }

    pub(crate) fn from_i128(m: [i128; 4]) -> Result<GroupElement> {
        let [a, b, c, d] = m;
        if a * d - b * c <= 0 {
            return Err(Psl2Error::InvalidInput(format!(
                "matrix [{a} {b}; {c} {d}] must have positive determinant"
            )));
        }
        let g = gcd4(m);
        let sign = if c > 0 || (c == 0 && d > 0) { 1 } else { -1 };
        let conv = |x: i128| -> Result<i64> {
            i64::try_from(sign * x / g).map_err(|_| Psl2Error::Overflow)
        };
        Ok(GroupElement {
            a: conv(a)?,
            b: conv(b)?,
            c: conv(c)?,
            d: conv(d)?,
        })
    }

    /// Translation `T^(num/den)` as a preferred representative.
    pub fn translation(num: i64, den: i64) -> GroupElement {
        Self::new(den, num, 0, den).expect("den > 0")
    }

    /// Diagonal element `[x] = diag(num/den, 1)`.
    pub fn scale(num: i64, den: i64) -> Result<GroupElement> {
        Self::new(num, 0, 0, den)
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Projective determinant `ad - bc` of the preferred representative.
    pub fn pdet(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// `rho = pdet / c^2`; `None` when `c = 0`.
    pub fn rho(&self) -> Option<Ratio<i64>> {
        (self.c != 0).then(|| Ratio::new(self.pdet(), self.c * self.c))
    }

    /// `(pdet, |c|, |d|, rho)`.
    pub fn invariants(&self) -> (i64, i64, i64, Option<Ratio<i64>>) {
        (self.pdet(), self.c.abs(), self.d.abs(), self.rho())
    }

    pub fn checked_compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let (a, b, c, d) = (
            self.a as i128,
            self.b as i128,
            self.c as i128,
            self.d as i128,
        );
        let (e, f, g, h) = (
            other.a as i128,
            other.b as i128,
            other.c as i128,
            other.d as i128,
        );
        Self::from_i128([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn inverse(&self) -> GroupElement {
        Self::new(self.d, -self.b, -self.c, self.a).expect("adjugate of a valid element")
    }

    /// Conjugation `[a b; c d] -> [-a b; c -d]`.
    pub fn conjugate(&self) -> GroupElement {
        Self::new(-self.a, self.b, self.c, -self.d).expect("conjugate of a valid element")
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Self::IDENTITY, |acc, _| acc * base)
    }

    /// True for elements of `PSL2(Z)`.
    pub fn is_unimodular(&self) -> bool {
        self.pdet() == 1
    }

    /// Image of a boundary point.
    pub fn act_point(&self, p: Point) -> Point {
        match p {
            Point::Infinity => Point::rational(self.a, self.c),
            Point::Rational { num, den } => {
                let n = self.a as i128 * num as i128 + self.b as i128 * den as i128;
                let m = self.c as i128 * num as i128 + self.d as i128 * den as i128;
                if m == 0 {
                    return Point::Infinity;
                }
                let g = n.gcd(&m);
                let s = m.signum();
                Point::Rational {
                    num: (s * n / g) as i64,
                    den: (s * m / g) as i64,
                }
            }
        }
    }

    /// `(g z, jac(g, z))` with `jac = pdet / (cz + d)^2` for `z` in the upper half plane.
    pub fn act_jac(&self, z: Complex64) -> (Complex64, Complex64) {
        let p = self.pdet() as f64;
        if self.c == 0 {
            let w = (z * self.a as f64 + self.b as f64) / self.d as f64;
            return (w, Complex64::new(p / (self.d as f64 * self.d as f64), 0.0));
        }
        let cf = self.c as f64;
        let shifted = z + self.d as f64 / cf;
        let rho = p / (cf * cf);
        let w = self.a as f64 / cf - rho / shifted;
        let denom = z * cf + self.d as f64;
        (w, p / (denom * denom))
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    /// Panics when an entry overflows `i64`.
    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.checked_compose(&rhs).expect("entries overflow i64")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(
            GroupElement::new(2, 0, 0, 2).unwrap(),
            GroupElement::IDENTITY
        );
        assert_eq!(
            GroupElement::new(-3, -1, 0, -3).unwrap().entries(),
            [3, 1, 0, 3]
        );
        assert!(GroupElement::new(0, 0, 0, 0).is_err());
        assert!(GroupElement::new(0, 1, 1, 0).is_err());
    }

    #[test]
    fn stable_action_matches_naive() {
        let g = GroupElement::new(5, 2, 7, 3).unwrap();
        let z = Complex64::new(0.3, 0.8);
        let (w, j) = g.act_jac(z);
        let naive = (z * 5.0 + 2.0) / (z * 7.0 + 3.0);
        assert!((w - naive).norm() < 1e-14);
        assert!((j - 1.0 / ((z * 7.0 + 3.0) * (z * 7.0 + 3.0))).norm() < 1e-14);
    }
}
