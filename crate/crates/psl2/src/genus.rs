//! Genus of `X0(N)` by the classical formula, and generators of `Gamma0(N)`.

use crate::arith::{divisors, factorize, gamma0_index, gcd, totient};
use crate::cusp::p1_canon;
use crate::element::GroupElement;
use std::collections::{HashMap, VecDeque};

/// Product over primes `p | n` of the number of roots of `x^2 + b x + 1` mod `p`.
fn root_count(n: u64, b: i64) -> u64 {
    factorize(n)
        .iter()
        .map(|&(p, _)| {
            let p = p as i64;
            (0..p)
                .filter(|&x| (x * x + b * x + 1).rem_euclid(p) == 0)
                .count() as u64
        })
        .product()
}

/// Genus of the modular curve `X0(n)`.
pub fn genus_gamma0(n: u64) -> u64 {
    let mu = gamma0_index(n) as i64;
    let nu2 = if n % 4 == 0 {
        0
    } else {
        root_count(n, 0) as i64
    };
    let nu3 = if n % 9 == 0 {
        0
    } else {
        root_count(n, 1) as i64
    };
    let cusps: i64 = divisors(n)
        .iter()
        .map(|&d| totient(gcd(d as i64, (n / d) as i64) as u64) as i64)
        .sum();
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    (twelve_g / 12) as u64
}

/// Right coset representatives of `Gamma0(n)` in the modular group, with the
/// map from canonical bottom rows to representative indices.
pub fn gamma0_coset_reps(n: u64) -> Vec<GroupElement> {
    coset_table(n).0
}

fn coset_table(n: u64) -> (Vec<GroupElement>, HashMap<(i64, i64), usize>) {
    let ni = n as i64;
    let key = |g: &GroupElement| p1_canon(ni, g.c(), g.d());
    let mut reps = vec![GroupElement::IDENTITY];
    let mut index = HashMap::from([(key(&GroupElement::IDENTITY), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for x in [GroupElement::S, GroupElement::T] {
            let g = reps[i] * x;
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry(key(&g)) {
                v.insert(reps.len());
                reps.push(g);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    (reps, index)
}

/// Schreier generators of `Gamma0(n)` from the generators `S`, `T` of the modular group.
pub fn gamma0_generators(n: u64) -> Vec<GroupElement> {
    let ni = n as i64;
    let (reps, index) = coset_table(n);
    let mut gens = Vec::new();
    for r in &reps {
        for x in [GroupElement::S, GroupElement::T] {
            let g = *r * x;
            let rep = reps[index[&p1_canon(ni, g.c(), g.d())]];
            let s = g * rep.inverse();
            if s != GroupElement::IDENTITY && !gens.contains(&s) {
                gens.push(s);
            }
        }
    }
    gens
}
