//! Group descriptors for `Gamma0(N)`, `Gamma0(N)+S`, `Gamma0(n|h)+S` and
//! `Gamma0(n||h)+S`, with membership tests and the character `lambda`.

use crate::arith::{self, ex_compose, exact_divisors, is_exact_divisor, mod_inv, power_gcd};
use crate::element::GroupElement;
use crate::{Psl2Error, Result};
use num_integer::{Integer, Roots};
use std::collections::VecDeque;
use std::fmt;

/// Which of the supported families a [`GroupSpec`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gamma0,
    Gamma0Plus,
    Gamma0Pipe,
    Gamma0DoublePipe,
}

/// Symbolic description of a group. Every family is stored as `(n, h, S)`:
/// `Gamma0(N)` is `(N, 1, {1})` and `Gamma0(N)+S` is `(N, 1, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u64,
    pub h: u64,
    /// Sorted subgroup of `Ex(n/h)` containing 1.
    pub s: Vec<u64>,
}

impl GroupSpec {
    pub fn gamma0(n: u64) -> Result<GroupSpec> {
        Self::build(Family::Gamma0, n, 1, vec![1])
    }

    pub fn psl2z() -> GroupSpec {
        Self::gamma0(1).expect("level one")
    }

    /// `Gamma0(n)+S`; an empty `s` means all of `Ex(n)`.
    pub fn gamma0_plus(n: u64, s: Vec<u64>) -> Result<GroupSpec> {
        let s = if s.is_empty() { exact_divisors(n) } else { s };
        Self::build(Family::Gamma0Plus, n, 1, s)
    }

    pub fn pipe(n: u64, h: u64, s: Vec<u64>) -> Result<GroupSpec> {
        Self::build(Family::Gamma0Pipe, n, h, s)
    }

    pub fn double_pipe(n: u64, h: u64, s: Vec<u64>) -> Result<GroupSpec> {
        Self::build(Family::Gamma0DoublePipe, n, h, s)
    }

    fn build(family: Family, n: u64, h: u64, mut s: Vec<u64>) -> Result<GroupSpec> {
        if n == 0 || h == 0 {
            return Err(Psl2Error::InvalidInput("n and h must be positive".into()));
        }
        if n % h != 0 || 24 % h != 0 {
            return Err(Psl2Error::InvalidInput(format!(
                "h = {h} must divide both n = {n} and 24"
            )));
        }
        if s.is_empty() {
            s.push(1);
        }
        s.sort_unstable();
        s.dedup();
        let base = n / h;
        if let Some(&bad) = s.iter().find(|&&e| !is_exact_divisor(e, base)) {
            return Err(Psl2Error::InvalidInput(format!(
                "{bad} is not an exact divisor of {base}"
            )));
        }
        if !is_subgroup(&s) {
            return Err(Psl2Error::InvalidInput(format!(
                "S = {s:?} is not a subgroup of Ex({base})"
            )));
        }
        Ok(GroupSpec { family, n, h, s })
    }

    /// `n * h`: the level of the `Gamma0` subgroup contained in and normalized by the group.
    pub fn level(&self) -> u64 {
        self.n * self.h
    }

    /// `n / h`.
    pub fn base_level(&self) -> u64 {
        self.n / self.h
    }

    pub fn is_gamma0(&self) -> bool {
        self.h == 1 && self.s == [1]
    }

    /// True for the Fricke-type criterion `n/h ∈ S`, i.e. `[0 -1; nh 0]` lies in `Gamma0(n|h)+S`.
    pub fn is_fricke(&self) -> bool {
        self.s.contains(&self.base_level())
    }
}

/// True when `s` contains 1 and is closed under `e*f/gcd(e,f)^2`.
pub fn is_subgroup(s: &[u64]) -> bool {
    s.contains(&1)
        && s.iter()
            .all(|&e| s.iter().all(|&f| s.contains(&ex_compose(e, f))))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = self
            .s
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match self.family {
            Family::Gamma0 => write!(f, "Gamma0:{}", self.n),
            Family::Gamma0Plus => write!(f, "Gamma0Plus:{}:{}", self.n, list),
            Family::Gamma0Pipe => write!(f, "Gamma0Pipe:{}:{}:{}", self.n, self.h, list),
            Family::Gamma0DoublePipe => {
                write!(f, "Gamma0DoublePipe:{}:{}:{}", self.n, self.h, list)
            }
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Psl2Error;

    /// Parses `PSL2Z`, `Gamma0:N`, `Gamma0Plus:N[:e,f,..]`, `Gamma0Pipe:n:h[:S]`
    /// and `Gamma0DoublePipe:n:h[:S]`.
    fn from_str(text: &str) -> Result<GroupSpec> {
        let bad = || Psl2Error::InvalidInput(format!("cannot parse group '{text}'"));
        let parts: Vec<&str> = text.trim().split(':').collect();
        let num = |i: usize| -> Result<u64> {
            parts
                .get(i)
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())
        };
        let set = |i: usize| -> Result<Vec<u64>> {
            match parts.get(i) {
                None => Ok(Vec::new()),
                Some(p) => p
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad()))
                    .collect(),
            }
        };
        match parts[0] {
            "PSL2Z" | "SL2Z" if parts.len() == 1 => Ok(GroupSpec::psl2z()),
            "Gamma0" if parts.len() == 2 => GroupSpec::gamma0(num(1)?),
            "Gamma0Plus" if parts.len() <= 3 => GroupSpec::gamma0_plus(num(1)?, set(2)?),
            "Gamma0Pipe" if parts.len() <= 4 => GroupSpec::pipe(num(1)?, num(2)?, set(3)?),
            "Gamma0DoublePipe" if parts.len() <= 4 => {
                GroupSpec::double_pipe(num(1)?, num(2)?, set(3)?)
            }
            "Gamma0" | "Gamma0Plus" | "Gamma0Pipe" | "Gamma0DoublePipe" | "PSL2Z" | "SL2Z" => {
                Err(bad())
            }
            other => Err(Psl2Error::Unsupported(format!(
                "unknown group family '{other}'"
            ))),
        }
    }
}

/// True when `g` lies in `Gamma0(n|h)+S` (ignoring any kernel condition).
pub fn in_pipe_group(spec: &GroupSpec, g: &GroupElement) -> bool {
    let p = g.pdet() as i128;
    let (n, h) = (spec.n as i128, spec.h as i128);
    let [a, b, c, d] = g.entries().map(|x| x as i128);
    spec.s.iter().any(|&e| {
        // t = sqrt(e / p) must be rational with t*g of the shape [ae b/h; cn de].
        let e = e as i128;
        let g0 = e.gcd(&p);
        let (num, den) = (e / g0, p / g0);
        let (rn, rd) = (num.sqrt(), den.sqrt());
        if rn * rn != num || rd * rd != den {
            return false;
        }
        (rn * a) % (rd * e) == 0
            && (rn * b * h) % rd == 0
            && (rn * c) % (rd * n) == 0
            && (rn * d) % (rd * e) == 0
    })
}

/// True when `g` lies in `Gamma0(n)`.
pub fn in_gamma0(n: u64, g: &GroupElement) -> bool {
    g.pdet() == 1 && g.c() % n as i64 == 0
}

/// Shrinks `g` within its `Gamma0(level)` double coset using `T` on both sides
/// and `[1 0; level 1]` on the right.
pub fn reduce_mod_gamma0(g: &GroupElement, level: u64) -> GroupElement {
    let n = level as i128;
    let [mut a, mut b, mut c, mut d] = g.entries().map(|x| x as i128);
    let near = |x: i128, m: i128| -> i128 {
        if m == 0 {
            0
        } else {
            let q = Integer::div_floor(&x, &m);
            if 2 * (x - q * m) > m.abs() {
                q + m.signum()
            } else {
                q
            }
        }
    };
    for _ in 0..200 {
        let mut changed = false;
        if c != 0 {
            let k = near(d, c);
            if k != 0 {
                b -= k * a;
                d -= k * c;
                changed = true;
            }
        }
        if d != 0 {
            let k = near(c, n * d);
            if k != 0 {
                a -= k * n * b;
                c -= k * n * d;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if c != 0 {
        let t = near(a, c);
        a -= t * c;
        b -= t * d;
    } else if d != 0 {
        let t = near(b, d);
        b -= t * d;
    }
    GroupElement::from_i128([a, b, c, d]).unwrap_or(*g)
}

/// Cosets of `Gamma0(nh)` in `Gamma0(n|h)+S` together with the values of `lambda`.
#[derive(Clone, Debug)]
pub struct QuotientTable {
    level: u64,
    h: u64,
    reps: Vec<(GroupElement, i64)>,
    y_sign: i64,
}

/// Generators `X`, `Y` and `W_e'` of the quotient, as used by [`Group::lambda_of_word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    X,
    XInv,
    Y,
    YInv,
    /// Atkin-Lehner type element `W_e'` for `e'` in the image of `S` in `Ex(nh)`.
    W(u64),
    /// An arbitrary element of `Gamma0(nh)`.
    Gamma0(GroupElement),
}

fn atkin_lehner(e: u64, level: u64) -> GroupElement {
    let (e, m) = (e as i64, (level / e) as i64);
    let d = mod_inv(e, m).expect("exact divisor");
    let b = (d * e - 1) / m;
    GroupElement::new(e, b, level as i64, d * e).expect("determinant e")
}

impl QuotientTable {
    fn generators(spec: &GroupSpec, y_sign: i64) -> Vec<(GroupElement, i64)> {
        let level = spec.level();
        let h = spec.h as i64;
        let mut gens = vec![
            (GroupElement::new(h, 1, 0, h).expect("X"), 1),
            (
                GroupElement::new(1, 0, spec.n as i64, 1).expect("Y"),
                y_sign,
            ),
        ];
        for &e in &spec.s {
            let e_img = power_gcd(e, level);
            if e_img > 1 {
                gens.push((atkin_lehner(e_img, level), 0));
            }
        }
        gens
    }

    fn find(&self, g: &GroupElement) -> Option<usize> {
        let g = reduce_mod_gamma0(g, self.level);
        let ginv = g.inverse();
        self.reps.iter().position(|(r, _)| {
            ginv.checked_compose(r)
                .map(|x| in_gamma0(self.level, &x))
                .unwrap_or(false)
        })
    }

    fn try_build(spec: &GroupSpec, y_sign: i64) -> Option<QuotientTable> {
        let h = spec.h as i64;
        let gens = Self::generators(spec, y_sign);
        let mut table = QuotientTable {
            level: spec.level(),
            h: spec.h,
            reps: vec![(GroupElement::IDENTITY, 0)],
            y_sign,
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (g, l) = table.reps[i];
            for &(x, lx) in &gens {
                let prod = reduce_mod_gamma0(&g.checked_compose(&x).ok()?, table.level);
                let val = (l + lx).rem_euclid(h);
                match table.find(&prod) {
                    Some(j) if table.reps[j].1 != val => return None,
                    Some(_) => {}
                    None => {
                        table.reps.push((prod, val));
                        queue.push_back(table.reps.len() - 1);
                    }
                }
            }
        }
        Some(table)
    }

    /// Builds the table, taking `lambda(Y) = +1` for Fricke type and `-1`
    /// otherwise when that choice is consistent, and the opposite sign if not.
    pub fn new(spec: &GroupSpec) -> Result<QuotientTable> {
        let preferred = if spec.is_fricke() { 1 } else { -1 };
        Self::try_build(spec, preferred)
            .or_else(|| Self::try_build(spec, -preferred))
            .ok_or_else(|| Psl2Error::InvalidInput(format!("no consistent lambda for {spec}")))
    }

    pub fn y_sign(&self) -> i64 {
        self.y_sign
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `lambda(g)` in `[0, h)`, or `None` when `g` is not in `Gamma0(n|h)+S`.
    pub fn lambda(&self, g: &GroupElement) -> Option<i64> {
        self.find(g).map(|i| self.reps[i].1)
    }

    pub fn reps(&self) -> &[(GroupElement, i64)] {
        &self.reps
    }

    pub fn h(&self) -> u64 {
        self.h
    }
}

/// A group together with its precomputed quotient by `Gamma0(nh)`.
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    table: QuotientTable,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group> {
        let table = QuotientTable::new(&spec)?;
        Ok(Group { spec, table })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn table(&self) -> &QuotientTable {
        &self.table
    }

    fn is_kernel(&self) -> bool {
        self.spec.family == Family::Gamma0DoublePipe
    }

    pub fn is_member(&self, g: &GroupElement) -> bool {
        if !in_pipe_group(&self.spec, g) {
            return false;
        }
        !self.is_kernel() || self.table.lambda(g) == Some(0)
    }

    /// `lambda(g)` for `g` in `Gamma0(n|h)+S`.
    pub fn lambda(&self, g: &GroupElement) -> Option<i64> {
        if in_pipe_group(&self.spec, g) {
            self.table.lambda(g)
        } else {
            None
        }
    }

    /// Matrix of a generator.
    pub fn generator(&self, x: Generator) -> Result<GroupElement> {
        let h = self.spec.h as i64;
        let n = self.spec.n as i64;
        let level = self.spec.level();
        Ok(match x {
            Generator::X => GroupElement::new(h, 1, 0, h)?,
            Generator::XInv => GroupElement::new(h, -1, 0, h)?,
            Generator::Y => GroupElement::new(1, 0, n, 1)?,
            Generator::YInv => GroupElement::new(1, 0, -n, 1)?,
            Generator::W(e) => {
                if !is_exact_divisor(e, level)
                    || !self.spec.s.iter().any(|&f| power_gcd(f, level) == e)
                {
                    return Err(Psl2Error::InvalidInput(format!(
                        "W_{e} is not a generator of {}",
                        self.spec
                    )));
                }
                atkin_lehner(e, level)
            }
            Generator::Gamma0(g) => {
                if !in_gamma0(level, &g) {
                    return Err(Psl2Error::InvalidInput(format!(
                        "{g} not in Gamma0({level})"
                    )));
                }
                g
            }
        })
    }

    /// Sum of generator values of `lambda` along a word, modulo `h`.
    pub fn lambda_of_word(&self, word: &[Generator]) -> Result<i64> {
        let h = self.spec.h as i64;
        let y = self.table.y_sign;
        let mut total = 0i64;
        for &x in word {
            self.generator(x)?;
            total += match x {
                Generator::X => 1,
                Generator::XInv => -1,
                Generator::Y => y,
                Generator::YInv => -y,
                Generator::W(_) | Generator::Gamma0(_) => 0,
            };
        }
        Ok(total.rem_euclid(h))
    }

    /// Product of a word.
    pub fn word_product(&self, word: &[Generator]) -> Result<GroupElement> {
        word.iter().try_fold(GroupElement::IDENTITY, |acc, &x| {
            acc.checked_compose(&self.generator(x)?)
                .map(|g| reduce_mod_gamma0(&g, self.spec.level()))
        })
    }

    /// Representatives of the cosets of `Gamma0(nh)` in this group.
    pub fn coset_reps(&self) -> Vec<GroupElement> {
        self.table
            .reps
            .iter()
            .filter(|(_, l)| !self.is_kernel() || *l == 0)
            .map(|(g, _)| *g)
            .collect()
    }

    /// Index of `Gamma0(nh)` in the group.
    pub fn quotient_order(&self) -> usize {
        self.coset_reps().len()
    }

    /// True when `[0 -1; nh 0]` belongs to `Gamma0(n|h)+S`.
    pub fn is_fricke(&self) -> bool {
        let f = GroupElement::new(0, -1, self.spec.level() as i64, 0).expect("Fricke element");
        in_pipe_group(&self.spec, &f)
    }
}

/// Convenience wrapper building the quotient table on each call.
pub fn is_member(spec: &GroupSpec, g: &GroupElement) -> Result<bool> {
    Ok(Group::new(spec.clone())?.is_member(g))
}

/// Index of `Gamma0(n)` in the modular group, re-exported for convenience.
pub fn gamma0_index(n: u64) -> u64 {
    arith::gamma0_index(n)
}
