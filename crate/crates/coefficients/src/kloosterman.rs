use crate::TWO_PI;
use num_complex::Complex64;
use psl2::DoubleCosetKey;
use special::KahanSum;

/// `e((-m a + n d) / c)` for a key with `c > 0`.
pub(crate) fn kl_phase(key: &DoubleCosetKey, m: i64, n: i64) -> Complex64 {
    let c = key.c as i128;
    let r = (-(m as i128) * key.a as i128 + n as i128 * key.d as i128).rem_euclid(c);
    let (sin, cos) = (TWO_PI * (r as f64 / c as f64)).sin_cos();
    Complex64::new(cos, sin)
}

/// `sum_keys e((-m a + n d) / c)` over keys sharing the same `c`.
///
/// Dense key sets are binned by residue first, so each root of unity is
/// evaluated once per residue class.
pub(crate) fn kl_phase_sum(keys: &[DoubleCosetKey], m: i64, n: i64) -> Complex64 {
    let Some(first) = keys.first() else {
        return Complex64::new(0.0, 0.0);
    };
    let c = first.c;
    let residue = |k: &DoubleCosetKey| {
        (-(m as i128) * k.a as i128 + n as i128 * k.d as i128).rem_euclid(c as i128) as usize
    };
    let mut acc = KahanSum::new();
    if (keys.len() as i64) * 4 < c {
        for k in keys {
            acc.add(root_of_unity(residue(k) as i64, c));
        }
    } else {
        let mut bins = vec![0u32; c as usize];
        for k in keys {
            bins[residue(k)] += 1;
        }
        for (r, &count) in bins.iter().enumerate() {
            if count != 0 {
                acc.add(root_of_unity(r as i64, c) * count as f64);
            }
        }
    }
    acc.value()
}

fn root_of_unity(r: i64, c: i64) -> Complex64 {
    let (sin, cos) = (TWO_PI * (r as f64 / c as f64)).sin_cos();
    Complex64::new(cos, sin)
}

/// `rho^s`, with integer exponents taken exactly.
pub(crate) fn kloosterman_power(rho: f64, s: Complex64) -> Complex64 {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 1e9 {
        Complex64::new(rho.powi(s.re as i32), 0.0)
    } else {
        (s * rho.ln()).exp()
    }
}

/// `Kl(m, n, s) = e((-m a + n d) / c) (pdet / c^2)^s`.
pub fn kloosterman(key: &DoubleCosetKey, m: i64, n: i64, s: Complex64) -> Complex64 {
    kl_phase(key, m, n) * kloosterman_power(key.rho(), s)
}
