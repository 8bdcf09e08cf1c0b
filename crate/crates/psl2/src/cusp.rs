//! Cusps, widths and scaling elements.

use crate::arith::{divisors, ext_gcd, gcd};
use crate::element::{GroupElement, Point};
use crate::group::Group;
use crate::{Psl2Error, Result};
use num_rational::Ratio;
use std::collections::HashMap;

/// A cusp class with its representative point and width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub point: Point,
    /// Generator of the translation subgroup at the cusp, after conjugating by
    /// a modular element taking infinity to the cusp.
    pub width: Ratio<i64>,
}

/// A scaling element `sigma` with `sigma ∞ = cusp` and `(sigma⁻¹ Γ sigma)_∞ = B(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScalingData {
    pub cusp: Cusp,
    pub sigma: GroupElement,
    pub pdet: i64,
}

/// A modular element `M` with `M ∞ = p`.
pub fn modular_lift(p: Point) -> GroupElement {
    match p {
        Point::Infinity => GroupElement::IDENTITY,
        Point::Rational { num, den } => {
            let (_, x, y) = ext_gcd(num, den);
            GroupElement::new(num, -y, den, x).expect("unimodular")
        }
    }
}

pub(crate) fn p1_canon(n: i64, c: i64, d: i64) -> (i64, i64) {
    let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
    let mut best = (c, d);
    for u in 1..n.max(2) {
        if gcd(u, n) == 1 {
            let cand = ((u * c).rem_euclid(n), (u * d).rem_euclid(n));
            best = best.min(cand);
        }
    }
    best
}

/// Cusp data for `Gamma0(n)`: canonical points of `P1(Z/n)` labelled by cusp.
#[derive(Clone, Debug)]
pub struct Gamma0Cusps {
    n: u64,
    cusps: Vec<Cusp>,
    orbit_of: HashMap<(i64, i64), usize>,
}

impl Gamma0Cusps {
    pub fn new(n: u64) -> Gamma0Cusps {
        let ni = n as i64;
        let mut reps = vec![Point::Infinity];
        for c in divisors(n) {
            if c == n {
                continue;
            }
            let ci = c as i64;
            let g = gcd(ci, ni / ci);
            let mut seen = Vec::new();
            for a in 0..ci.max(1) {
                if gcd(a, ci) != 1 {
                    continue;
                }
                let r = a.rem_euclid(g);
                if !seen.contains(&r) {
                    seen.push(r);
                    reps.push(Point::rational(a, ci));
                }
            }
        }
        let mut orbit_of = HashMap::new();
        let mut cusps = Vec::new();
        for (idx, &p) in reps.iter().enumerate() {
            let m = modular_lift(p);
            let mut size = 0;
            for k in 0..ni {
                let key = p1_canon(ni, m.c(), m.d() + k * m.c());
                if orbit_of.insert(key, idx).is_none() {
                    size += 1;
                }
            }
            cusps.push(Cusp {
                point: p,
                width: Ratio::from_integer(size),
            });
        }
        Gamma0Cusps { n, cusps, orbit_of }
    }

    pub fn cusps(&self) -> &[Cusp] {
        &self.cusps
    }

    /// Index of the cusp class containing `p`.
    pub fn classify(&self, p: Point) -> usize {
        let m = modular_lift(p);
        self.orbit_of[&p1_canon(self.n as i64, m.c(), m.d())]
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Conjugate `M T^w M⁻¹`.
fn conj_translation(m: &GroupElement, w: Ratio<i64>) -> GroupElement {
    let t = GroupElement::translation(*w.numer(), *w.denom());
    *m * t * m.inverse()
}

/// Width of `group` at `p`.
pub fn width_at(group: &Group, p: Point) -> Ratio<i64> {
    let m = modular_lift(p);
    let base = Gamma0Cusps::new(group.spec().level());
    let w0 = base.cusps()[base.classify(p)].width;
    let order = group.table().len() as i64;
    (1..=order)
        .rev()
        .map(|j| w0 / j)
        .find(|&w| group.is_member(&conj_translation(&m, w)))
        .unwrap_or(w0)
}

/// Cusp classes of a group, infinity first.
pub fn cusps(group: &Group) -> Vec<Cusp> {
    let base = Gamma0Cusps::new(group.spec().level());
    let reps = group.coset_reps();
    let k = base.cusps().len();
    let mut parent: Vec<usize> = (0..k).collect();
    for (i, c) in base.cusps().iter().enumerate() {
        for r in &reps {
            let j = base.classify(r.act_point(c.point));
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    (0..k)
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| {
            let point = base.cusps()[i].point;
            Cusp {
                point,
                width: width_at(group, point),
            }
        })
        .collect()
}

/// The cusp class of `group` containing `p`, with its canonical representative.
pub fn cusp_of(group: &Group, p: Point) -> Result<Cusp> {
    let list = cusps(group);
    let base = Gamma0Cusps::new(group.spec().level());
    let target = base.classify(p);
    let reps = group.coset_reps();
    for c in &list {
        for r in &reps {
            if base.classify(r.act_point(c.point)) == target {
                return Ok(*c);
            }
        }
    }
    Err(Psl2Error::InvalidInput(format!("{p} is not a cusp")))
}

/// Scaling element `M [w]` at the cusp `cusp` of `group`.
pub fn scaling_element(group: &Group, cusp: &Cusp) -> Result<ScalingData> {
    let m = modular_lift(cusp.point);
    let w = width_at(group, cusp.point);
    let scale = GroupElement::scale(*w.numer(), *w.denom())?;
    let sigma = m.checked_compose(&scale)?;
    Ok(ScalingData {
        cusp: Cusp {
            point: cusp.point,
            width: w,
        },
        sigma,
        pdet: sigma.pdet(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn widths(n: u64) -> Vec<(String, i64)> {
        let g = Group::new(GroupSpec::gamma0(n).unwrap()).unwrap();
        cusps(&g)
            .iter()
            .map(|c| (c.point.to_string(), c.width.to_integer()))
            .collect()
    }

    #[test]
    fn small_levels() {
        assert_eq!(widths(1), vec![("inf".to_string(), 1)]);
        assert_eq!(widths(2), vec![("inf".into(), 1), ("0".into(), 2)]);
        assert_eq!(
            widths(4),
            vec![("inf".into(), 1), ("0".into(), 4), ("1/2".into(), 1)]
        );
    }
}
