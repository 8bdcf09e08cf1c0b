//! Elementary number theory on small integers.

use num_integer::Integer;

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Inverse of `a` modulo `m > 0`, if it exists. The result lies in `[0, m)`.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, k) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of divisors.
pub fn tau(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| k as u64 + 1).product()
}

/// `sigma(n, k) = sum_{d | n} d^k` for integer `k >= 0`.
pub fn sigma(n: u64, k: u32) -> u128 {
    divisors(n).iter().map(|&d| (d as u128).pow(k)).sum()
}

/// `sigma(n, s)` for real `s`.
pub fn sigma_real(n: u64, s: f64) -> f64 {
    divisors(n).iter().map(|&d| (d as f64).powf(s)).sum()
}

/// True when `e` is an exact divisor of `n`: `e | n` and `gcd(e, n/e) = 1`.
pub fn is_exact_divisor(e: u64, n: u64) -> bool {
    e > 0 && n % e == 0 && (e as i64).gcd(&((n / e) as i64)) == 1
}

/// The group `Ex(n)` of exact divisors of `n`, sorted.
pub fn exact_divisors(n: u64) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&e| is_exact_divisor(e, n))
        .collect()
}

/// Product in `Ex(n)`: `e * f / gcd(e, f)^2`.
pub fn ex_compose(e: u64, f: u64) -> u64 {
    let g = (e as i64).gcd(&(f as i64)) as u64;
    e / g * (f / g)
}

/// Multiplication table of `Ex(n)` in the order returned by [`exact_divisors`].
pub fn ex_table(n: u64) -> Vec<Vec<u64>> {
    let ex = exact_divisors(n);
    ex.iter()
        .map(|&e| ex.iter().map(|&f| ex_compose(e, f)).collect())
        .collect()
}

/// `((a, b)`: the largest `c` with `c^2 | a` and `c | b`.
pub fn square_gcd(a: u64, b: u64) -> u64 {
    let mut best = 1;
    for c in divisors(b) {
        if a % (c * c) == 0 {
            best = best.max(c);
        }
    }
    best
}

/// `(a^infinity, b)`: the largest divisor of `b` dividing some power of `a`.
pub fn power_gcd(a: u64, b: u64) -> u64 {
    factorize(b)
        .into_iter()
        .filter(|&(p, _)| a % p == 0)
        .map(|(p, k)| p.pow(k))
        .product()
}

/// Index of `Gamma0(n)` in the modular group.
pub fn gamma0_index(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p + 1))
}
