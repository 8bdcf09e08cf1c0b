use proptest::prelude::*;
use special::{e, gen_exp, hurwitz_zeta, partial_exp, phi, Complex64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn kummer_grid() {
    let mut count = 0;
    for &a in &[c(1.0, 0.0), c(0.5, 0.3), c(-1.5, 0.0), c(2.2, -0.4)] {
        for &b in &[c(2.0, 0.0), c(1.5, 0.0), c(0.7, 1.0)] {
            for &z in &[c(0.3, 0.1), c(-0.8, 0.6)] {
                if count == 20 {
                    break;
                }
                count += 1;
                let lhs = phi(a, b, z).unwrap();
                let rhs = e(z) * phi(b - a, b, -z).unwrap();
                assert!(
                    (lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0),
                    "{a} {b} {z}"
                );
            }
        }
    }
    assert_eq!(count, 20);
}

#[test]
fn gen_exp_two_routes() {
    let z = c(0.0, 0.2);
    let s = c(1.5, 0.0);
    let mut series = c(0.0, 0.0);
    let w = c(0.0, 2.0 * std::f64::consts::PI) * z;
    for k in 0..80 {
        let t = s + k as f64;
        series += w.powc(t) * special::rgamma(t + 1.0);
    }
    let g = gen_exp(z, s).unwrap();
    assert!((g - series).norm() < 1e-13 * series.norm());
}

proptest! {
    #[test]
    fn gen_exp_plus_partial_is_exp(re in -1.5f64..1.5, im in -1.0f64..1.0, n in 1i64..=3) {
        let z = c(re, im);
        let lhs = gen_exp(z, c(n as f64, 0.0)).unwrap() + partial_exp(z, n);
        prop_assert!((lhs - e(z)).norm() < 1e-12 * e(z).norm().max(1.0));
    }

    #[test]
    fn hurwitz_shift_identity(alpha in 0.05f64..1.0, sr in -1.9f64..8.0, si in -10.0f64..10.0) {
        let s = c(sr, si);
        prop_assume!((s - c(1.0, 0.0)).norm() > 1e-3);
        let lhs = hurwitz_zeta(alpha, s).unwrap();
        let rhs = c(alpha, 0.0).powc(-s) + hurwitz_zeta(alpha + 1.0, s).unwrap();
        let tol = if sr < 0.0 { 1e-11 } else { 1e-12 };
        prop_assert!((lhs - rhs).norm() < tol * lhs.norm().max(rhs.norm()).max(1.0));
    }

    #[test]
    fn kummer_random(ar in -2.0f64..2.0, br in 0.3f64..3.0, zr in -1.0f64..1.0, zi in -1.0f64..1.0) {
        let (a, b, z) = (c(ar, 0.1), c(br, -0.2), c(zr, zi));
        let lhs = phi(a, b, z).unwrap();
        let rhs = e(z) * phi(b - a, b, -z).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0));
    }
}
