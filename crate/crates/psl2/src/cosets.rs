//! Enumeration of right cosets and double cosets of `B(Z)` in translate sets
//! `Σp⁻¹ Γ Σq`.

use crate::arith::{divisors, gcd, mod_inv};
use crate::cusp::{cusp_of, modular_lift, scaling_element, Cusp};
use crate::element::{GroupElement, Point};
use crate::group::{in_gamma0, Family, Group, QuotientTable};
use crate::{Psl2Error, Result};
use num_rational::Ratio;

/// Double coset `B(Z) χ B(Z)` with `c(χ) > 0`, recorded by the data needed for
/// Kloosterman sums: `pdet`, `c`, and residues `a, d (mod c)` with `ad ≡ pdet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleCosetKey {
    pub pdet: i64,
    pub c: i64,
    pub a: i64,
    pub d: i64,
}

impl DoubleCosetKey {
    /// Key of the double coset containing `g`; `None` when `c(g) = 0`.
    pub fn from_element(g: &GroupElement) -> Option<DoubleCosetKey> {
        (g.c() > 0).then(|| DoubleCosetKey {
            pdet: g.pdet(),
            c: g.c(),
            a: g.a().rem_euclid(g.c()),
            d: g.d().rem_euclid(g.c()),
        })
    }

    pub fn rho(&self) -> f64 {
        self.pdet as f64 / (self.c as f64 * self.c as f64)
    }

    pub fn rho_exact(&self) -> Ratio<i64> {
        Ratio::new(self.pdet, self.c * self.c)
    }

    /// A representative `[a b; c d]` of the double coset.
    pub fn representative(&self) -> GroupElement {
        let b = (self.a as i128 * self.d as i128 - self.pdet as i128) / self.c as i128;
        GroupElement::from_i128([self.a as i128, b, self.c as i128, self.d as i128])
            .expect("valid key")
    }

    /// Key of the inverse double coset.
    pub fn inverse(&self) -> DoubleCosetKey {
        DoubleCosetKey {
            pdet: self.pdet,
            c: self.c,
            a: (-self.d).rem_euclid(self.c),
            d: (-self.a).rem_euclid(self.c),
        }
    }

    /// Key of the conjugate double coset `[-a b; c -d]`.
    pub fn conjugate(&self) -> DoubleCosetKey {
        DoubleCosetKey {
            pdet: self.pdet,
            c: self.c,
            a: (-self.a).rem_euclid(self.c),
            d: (-self.d).rem_euclid(self.c),
        }
    }
}

/// Bottom row `(c, d)` of a right coset `B(Z) χ`, with `a` solving `ad ≡ pdet (mod c)`.
/// Any such `a` serves, since `e(-m χ z)` is unchanged by `χ -> Tχ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CosetRow {
    pub c: i64,
    pub d: i64,
    pub a: i64,
    pub pdet: i64,
}

impl CosetRow {
    pub fn rho(&self) -> f64 {
        self.pdet as f64 / (self.c as f64 * self.c as f64)
    }
}

#[derive(Clone, Debug)]
enum Kind {
    /// `Gamma0(level)+S` at the pair of infinite cusps.
    Atkin { level: i64, s: Vec<i64> },
    /// `Gamma0(n||h)+S` at infinity, from `Gamma0(n/h)+S` keys conjugated by `[h]`
    /// and refined by `X = T^(1/h)` on both sides.
    Expanded {
        level: i64,
        s: Vec<i64>,
        h: i64,
        table: QuotientTable,
    },
    /// `Gamma0(n)` at an arbitrary pair of cusps.
    CuspPair {
        n: i64,
        mp: GroupElement,
        wp: i64,
        mq: GroupElement,
        wq: i64,
    },
}

/// The set `B(Z)\Σp⁻¹ Γ Σq` for a supported group and cusp pair.
#[derive(Clone, Debug)]
pub struct CosetSet {
    kind: Kind,
    p: Cusp,
    q: Cusp,
    sigma_p: GroupElement,
    sigma_q: GroupElement,
}

/// Units of `Z/m` in increasing order with their inverses, by batch inversion.
fn units_with_inverses(m: i64) -> Vec<(i64, i64)> {
    let mut is_unit = vec![true; m as usize];
    is_unit[0] = m == 1;
    for (p, _) in crate::arith::factorize(m as u64) {
        for k in (0..m as usize).step_by(p as usize) {
            is_unit[k] = false;
        }
    }
    let units: Vec<i64> = (0..m).filter(|&a| is_unit[a as usize]).collect();
    let mm = m as u64;
    let mut prefix = Vec::with_capacity(units.len());
    let mut acc = 1u64;
    for &a in &units {
        acc = acc * a as u64 % mm;
        prefix.push(acc);
    }
    let mut inv = mod_inv(acc as i64, m).expect("product of units") as u64;
    let mut out = vec![(0, 0); units.len()];
    for i in (0..units.len()).rev() {
        let before = if i == 0 { 1 } else { prefix[i - 1] };
        out[i] = (units[i], (inv * before % mm) as i64);
        inv = inv * units[i] as u64 % mm;
    }
    out
}

fn atkin_keys(level: i64, c: i64, e: i64, out: &mut Vec<DoubleCosetKey>) {
    if c % level != 0 || c % e != 0 || gcd(e, c / e) != 1 {
        return;
    }
    let m = c / e;
    if m == 1 {
        out.push(DoubleCosetKey {
            pdet: e,
            c,
            a: 0,
            d: 0,
        });
        return;
    }
    let units = units_with_inverses(m);
    let e_inv = mod_inv(e, m).expect("e is a unit");
    out.reserve(units.len());
    for (ap, ap_inv) in units {
        out.push(DoubleCosetKey {
            pdet: e,
            c,
            a: ap * e,
            d: (ap_inv * e_inv % m) * e,
        });
    }
}

impl CosetSet {
    /// Builds the translate set for cusps `p` and `q` of `group`. The points are
    /// replaced by the canonical representatives of their cusp classes.
    pub fn new(group: &Group, p: Point, q: Point) -> Result<CosetSet> {
        let p = cusp_of(group, p)?;
        let q = cusp_of(group, q)?;
        let sp = scaling_element(group, &p)?;
        let sq = scaling_element(group, &q)?;
        let spec = group.spec();
        let at_infinity = p.point == Point::Infinity && q.point == Point::Infinity;
        let kind = if at_infinity && spec.family == Family::Gamma0DoublePipe && spec.h > 1 {
            Kind::Expanded {
                level: spec.base_level() as i64,
                s: spec.s.iter().map(|&e| e as i64).collect(),
                h: spec.h as i64,
                table: group.table().clone(),
            }
        } else if at_infinity {
            Kind::Atkin {
                level: spec.base_level() as i64,
                s: spec.s.iter().map(|&e| e as i64).collect(),
            }
        } else if spec.is_gamma0() {
            Kind::CuspPair {
                n: spec.n as i64,
                mp: modular_lift(p.point),
                wp: p.width.to_integer(),
                mq: modular_lift(q.point),
                wq: q.width.to_integer(),
            }
        } else {
            return Err(Psl2Error::Unsupported(format!(
                "cusp pair {}|{} for {spec}",
                p.point, q.point
            )));
        };
        Ok(CosetSet {
            kind,
            p,
            q,
            sigma_p: sp.sigma,
            sigma_q: sq.sigma,
        })
    }

    pub fn cusp_p(&self) -> Cusp {
        self.p
    }

    pub fn cusp_q(&self) -> Cusp {
        self.q
    }

    /// Scaling elements `(σp, σq)` fixing the `T^α` ambiguity of the translate set.
    pub fn scaling_elements(&self) -> (GroupElement, GroupElement) {
        (self.sigma_p, self.sigma_q)
    }

    /// True when `Σp⁻¹Σq` contains `B(Z)`, so the sum carries the `e(-mz)` term.
    pub fn contains_identity(&self) -> bool {
        self.p.point == self.q.point
    }

    /// All double coset keys with the given `c`, sorted by `(pdet, a, d)`.
    pub fn keys_with_c(&self, c: i64) -> Vec<DoubleCosetKey> {
        let mut out = Vec::new();
        if c <= 0 {
            return out;
        }
        match &self.kind {
            Kind::Atkin { level, s } => {
                for &e in s {
                    atkin_keys(*level, c, e, &mut out);
                }
            }
            Kind::Expanded { level, s, h, table } => {
                let h4 = h.pow(4);
                let mut base = Vec::new();
                for &e in s {
                    for g in divisors((h.pow(3) * e) as u64) {
                        let g = g as i64;
                        if (c * g) % h4 != 0 {
                            continue;
                        }
                        base.clear();
                        atkin_keys(*level, c * g / h4, e, &mut base);
                        for key in &base {
                            expand_key(key, *h, c, table, &mut out);
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
            }
            Kind::CuspPair { n, mp, wp, mq, wq } => {
                let mq_inv = mq.inverse();
                for t in divisors((wp * wq) as u64) {
                    let t = t as i64;
                    if c % t != 0 {
                        continue;
                    }
                    let gc = c / t;
                    for ga0 in 0..gc {
                        if gcd(ga0, gc) != 1 {
                            continue;
                        }
                        let gd0 = mod_inv(ga0, gc).expect("unit");
                        for i in 0..*wp {
                            let ga = ga0 + i * gc;
                            for k in 0..*wq {
                                let gd = gd0 + k * gc;
                                let gb = (ga as i128 * gd as i128 - 1) / gc as i128;
                                let g = GroupElement::from_i128([
                                    ga as i128, gb, gc as i128, gd as i128,
                                ])
                                .expect("unimodular");
                                if !in_gamma0(*n as u64, &(*mp * g * mq_inv)) {
                                    continue;
                                }
                                let chi = GroupElement::from_i128([
                                    ga as i128 * *wq as i128,
                                    gb,
                                    gc as i128 * (*wp * *wq) as i128,
                                    gd as i128 * *wp as i128,
                                ])
                                .expect("positive determinant");
                                if let Some(key) = DoubleCosetKey::from_element(&chi) {
                                    if key.c == c {
                                        out.push(key);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Double coset keys with `c <= c_max`, in ascending `c`.
    pub fn double_cosets(&self, c_max: i64) -> impl Iterator<Item = DoubleCosetKey> + '_ {
        (1..=c_max).flat_map(move |c| self.keys_with_c(c))
    }

    /// Right cosets with the given `c` and `|d| <= d_max`, ascending in `d`.
    pub fn rows_with_c(&self, c: i64, d_max: i64) -> Vec<CosetRow> {
        let mut rows = Vec::new();
        for key in self.keys_with_c(c) {
            let start = key.d - (key.d + d_max).div_euclid(c) * c;
            let mut d = start;
            while d <= d_max {
                rows.push(CosetRow {
                    c,
                    d,
                    a: key.a,
                    pdet: key.pdet,
                });
                d += c;
            }
        }
        rows.sort_unstable();
        rows
    }

    /// Right cosets in the rectangle `0 < c <= K`, `-K² <= d <= K²`, in ascending `(c, d)`.
    pub fn rectangle(&self, k: f64) -> impl Iterator<Item = CosetRow> + '_ {
        let c_max = k.floor() as i64;
        let d_max = (k * k).floor() as i64;
        (1..=c_max).flat_map(move |c| self.rows_with_c(c, d_max))
    }
}

fn expand_key(
    key: &DoubleCosetKey,
    h: i64,
    c_target: i64,
    table: &QuotientTable,
    out: &mut Vec<DoubleCosetKey>,
) {
    let chi = key.representative();
    let hh = h as i128;
    let mid = [
        hh * chi.a() as i128,
        chi.b() as i128,
        hh * hh * chi.c() as i128,
        hh * chi.d() as i128,
    ];
    for i in 0..h as i128 {
        let left = [
            hh * mid[0] + i * mid[2],
            hh * mid[1] + i * mid[3],
            hh * mid[2],
            hh * mid[3],
        ];
        for j in 0..h as i128 {
            let m = [
                left[0] * hh,
                left[0] * j + left[1] * hh,
                left[2] * hh,
                left[2] * j + left[3] * hh,
            ];
            let Ok(g) = GroupElement::from_i128(m) else {
                continue;
            };
            if g.c() != c_target || table.lambda(&g) != Some(0) {
                continue;
            }
            if let Some(k) = DoubleCosetKey::from_element(&g) {
                out.push(k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn set(spec: GroupSpec, p: Point, q: Point) -> CosetSet {
        CosetSet::new(&Group::new(spec).unwrap(), p, q).unwrap()
    }

    #[test]
    fn modular_group_keys() {
        let s = set(GroupSpec::psl2z(), Point::Infinity, Point::Infinity);
        let keys: Vec<_> = s.double_cosets(2).collect();
        assert_eq!(
            keys,
            vec![
                DoubleCosetKey {
                    pdet: 1,
                    c: 1,
                    a: 0,
                    d: 0
                },
                DoubleCosetKey {
                    pdet: 1,
                    c: 2,
                    a: 1,
                    d: 1
                }
            ]
        );
        assert_eq!(s.keys_with_c(12).len(), 4);
    }

    #[test]
    fn level_two_rectangle() {
        let s = set(
            GroupSpec::gamma0(2).unwrap(),
            Point::Infinity,
            Point::Infinity,
        );
        let ds: Vec<i64> = s.rectangle(2.0).map(|r| r.d).collect();
        assert_eq!(ds, vec![-3, -1, 1, 3]);
    }
}
