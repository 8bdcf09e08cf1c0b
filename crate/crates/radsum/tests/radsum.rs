use coefficients::{dirichlet_d, CoeffEngine};
use psl2::{CosetRow, GroupElement, GroupSpec, Point};
use qseries::{delta, j_series};
use radsum::*;
use special::e;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn psl2z(m: i64, z: Complex64, k: f64) -> EvalParams {
    EvalParams::new(GroupSpec::psl2z(), m, z, k)
}

/// `J(z) = j(z) - 744` from the exact q-expansion.
fn big_j(z: Complex64) -> Complex64 {
    j_series(60).eval_at(z)
}

#[test]
fn rreg_weight_one_is_one() {
    let row = CosetRow {
        c: 3,
        d: 2,
        a: 2,
        pdet: 1,
    };
    assert_eq!(rreg(1, 1.0, &row, c(0.2, 0.7)), c(1.0, 0.0));
    assert_eq!(rreg(3, 2.0, &row, c(-1.0, 0.1)), c(1.0, 0.0));
}

#[test]
fn rreg_weight_zero_two_routes() {
    let rows = [
        CosetRow {
            c: 1,
            d: 0,
            a: 0,
            pdet: 1,
        },
        CosetRow {
            c: 2,
            d: -3,
            a: 1,
            pdet: 1,
        },
        CosetRow {
            c: 7,
            d: 40,
            a: 3,
            pdet: 1,
        },
        CosetRow {
            c: 2,
            d: 1,
            a: 1,
            pdet: 2,
        },
    ];
    for row in &rows {
        for z in [c(0.0, 1.0), c(0.31, 1.4), c(-2.5, 2.0)] {
            for m in [1.0, 0.5] {
                let w = z + row.d as f64 / row.c as f64;
                let x = -m * row.rho() / w;
                let closed = c(1.0, 0.0) - e(x);
                let phi_route = rreg_phi(0, m, row, z).unwrap();
                assert!((phi_route - closed).norm() < 1e-12, "{row:?} {z} {m}");
                assert!((rreg(0, m, row, z) - closed).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn rreg_weight_zero_vanishes_high_up() {
    let row = CosetRow {
        c: 1,
        d: 0,
        a: 0,
        pdet: 1,
    };
    let r = rreg(0, 1.0, &row, c(0.0, 1e6));
    assert!(r.norm() < 1e-5);
}

#[test]
fn rreg_negative_weight_matches_phi() {
    let row = CosetRow {
        c: 3,
        d: 1,
        a: 1,
        pdet: 1,
    };
    for s in [-1, -2] {
        let a = rreg(s, 1.0, &row, c(0.1, 0.8));
        let b = rreg_phi(s, 1.0, &row, c(0.1, 0.8)).unwrap();
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
    }
}

#[test]
fn continued_factors_at_one() {
    let rows = [
        CosetRow {
            c: 1,
            d: 0,
            a: 0,
            pdet: 1,
        },
        CosetRow {
            c: 5,
            d: -7,
            a: 3,
            pdet: 1,
        },
    ];
    for row in &rows {
        for s in [0, -1] {
            let z = c(0.2, 0.9);
            assert_eq!(
                treg(s, 1.0, row, z, c(1.0, 0.0)).unwrap(),
                rreg(s, 1.0, row, z)
            );
            assert_eq!(tsa_term(s, 1.0, row, c(1.0, 0.0)), c(0.0, 0.0));
        }
    }
    let row = CosetRow {
        c: 4,
        d: 0,
        a: 1,
        pdet: 1,
    };
    assert_eq!(tsa_term(0, 1.0, &row, c(1.5, 0.3)), c(0.0, 0.0));
}

#[test]
fn treg_matches_phi_definition() {
    let row = CosetRow {
        c: 3,
        d: 2,
        a: 2,
        pdet: 1,
    };
    let z = c(0.1, 0.6);
    for (s, u) in [(0, c(1.5, 0.0)), (0, c(1.2, 0.4)), (-1, c(2.3, 0.0))] {
        let w = z + row.d as f64 / row.c as f64;
        let x = -row.rho() / w;
        let t = u - 2.0 * s as f64;
        let phi = special::phi(t, t + 1.0, x).unwrap();
        let direct = phi * (c(0.0, -2.0 * std::f64::consts::PI) * x).powc(t);
        let got = treg(s, 1.0, &row, z, u).unwrap();
        assert!((got - direct).norm() < 1e-12 * direct.norm(), "{s} {u}");
    }
}

#[test]
fn rademacher_sum_for_j() {
    let z = c(0.0, 1.0);
    let want = big_j(z) + 12.0;
    assert!((want.re - 996.0).abs() < 1e-9);
    let r = rs_direct(&psl2z(1, z, 400.0)).unwrap();
    let err = (r.value - want).norm();
    let half_err = (r.half_value - want).norm();
    assert!(err < 0.02 * 996.0);
    assert!(err < half_err, "{err} vs {half_err}");
    assert!(!r.warn_slow);
}

#[test]
fn rademacher_sum_is_periodic() {
    let a = rs_direct(&psl2z(1, c(0.0, 1.0), 100.0)).unwrap();
    let b = rs_direct(&psl2z(1, c(1.0, 1.0), 100.0)).unwrap();
    // Shifting z by 1 moves the d-window by c, so only rows at the edge differ.
    assert!((a.value - b.value).norm() < 0.1 * a.half_step_change());
}

#[test]
fn rademacher_sum_matches_fourier_side() {
    let engine = CoeffEngine::new(&GroupSpec::psl2z(), Point::Infinity, Point::Infinity).unwrap();
    let pairs: Vec<(i64, i64)> = (0..=12).map(|n| (1, n)).collect();
    let fc = engine.fc_many(0, &pairs, 2000);
    for z in [c(0.0, 1.0), c(0.3, 1.2), c(-0.4, 1.5)] {
        let mut fourier = e(-z) + fc[0] / 2.0;
        for n in 1..=12 {
            fourier += fc[n] * e(n as f64 * z);
        }
        let r = rs_direct(&psl2z(1, z, 200.0)).unwrap();
        let tol = (10.0 * r.half_step_change()).max(1e-3);
        assert!(
            (r.value - fourier).norm() < tol,
            "{z}: {} vs {fourier}",
            r.value
        );
    }
}

#[test]
fn slow_flag_below_threshold() {
    let r = rs_direct(&psl2z(1, c(0.0, 0.04), 4.0)).unwrap();
    assert!(r.warn_slow);
}

#[test]
fn conjugate_sum_constant() {
    let z = c(0.0, 1.0);
    let r = cs_direct(&psl2z(1, z, 400.0)).unwrap();
    assert!((r.value - c(-12.0, 0.0)).norm() < 0.5);
    assert!(r.value.im.abs() < 1e-9);
    let r2 = cs_direct(&psl2z(2, z, 400.0)).unwrap();
    assert!((r2.value - c(-36.0, 0.0)).norm() < 1.5);

    let a = cs_direct(&psl2z(1, c(0.0, 1.0), 200.0)).unwrap();
    let b = cs_direct(&psl2z(1, c(0.3, 1.2), 200.0)).unwrap();
    assert!((a.value - b.value).norm() < 0.05);
    let shifted = cs_direct(&psl2z(1, c(1.3, 1.2), 200.0)).unwrap();
    assert!((shifted.value - b.value).norm() < 0.1 * b.half_step_change());
}

#[test]
fn fractional_orders() {
    let spec = GroupSpec::psl2z();
    let z = c(0.0, 1.0);
    let half = fractional_direct(&spec, 1, 2, z, 200.0).unwrap();
    assert!(half.value.norm() < 0.5);
    let doubled = fractional_direct(&spec, 1, 2, z, 400.0).unwrap();
    assert!(doubled.value.norm() <= half.value.norm().max(1e-12));

    let two = fractional_direct(&spec, 2, 1, z, 50.0).unwrap();
    let classical = rs_direct(&psl2z(2, z, 50.0)).unwrap();
    assert_eq!(two.value, classical.value);

    let roots: Complex64 = (0..2).map(|k| e(c(-(k as f64) / 2.0, 0.0))).sum();
    assert!(roots.norm() < 1e-15);
}

#[test]
fn invalid_parameters() {
    let bad_z = psl2z(1, c(0.0, -1.0), 10.0);
    assert!(matches!(
        rs_direct(&bad_z),
        Err(RadsumError::InvalidInput(_))
    ));
    let bad_k = psl2z(1, c(0.0, 1.0), 0.0);
    assert!(matches!(
        cs_direct(&bad_k),
        Err(RadsumError::InvalidInput(_))
    ));
    let weight = psl2z(1, c(0.0, 1.0), 10.0).with_weight(-1);
    assert!(matches!(
        rs_direct(&weight),
        Err(RadsumError::Unsupported(_))
    ));
    assert!(fractional_direct(&GroupSpec::psl2z(), 2, 4, c(0.0, 1.0), 10.0).is_err());
}

#[test]
fn continued_sum_two_routes() {
    let p = psl2z(1, c(0.0, 1.0), 1.0).with_s_cont(c(1.5, 0.0));
    let direct = qs_continued(&p, 60).unwrap();
    let fourier = qs_coefficient_route(&p, 60).unwrap();
    assert!((direct.qs - fourier).norm() < 1e-8 * fourier.norm());
    assert_eq!(direct.qs, direct.ts - direct.tsa_sum);

    let d = dirichlet_d(&p.spec, p.p, p.q, 1, 0, c(-0.5, 0.0), 60)
        .unwrap()
        .value;
    assert!((direct.tsa_sum + d).norm() < 1e-10 * d.norm());
}

#[test]
fn continued_sum_near_one() {
    let spec = GroupSpec::psl2z();
    for u in [1.5, 1.25, 1.1] {
        let p = psl2z(1, c(0.1, 1.1), 1.0).with_s_cont(c(u, 0.0));
        let direct = qs_continued(&p, 40).unwrap();
        let fourier = qs_coefficient_route(&p, 40).unwrap();
        assert!((direct.qs - fourier).norm() < 1e-4, "{u}");
    }
    let p = EvalParams::new(GroupSpec::gamma0(2).unwrap(), 1, c(0.0, 0.8), 1.0)
        .with_s_cont(c(1.3, 0.2));
    let direct = qs_continued(&p, 40).unwrap();
    let fourier = qs_coefficient_route(&p, 40).unwrap();
    assert!((direct.qs - fourier).norm() < 1e-8 * fourier.norm());
    let _ = spec;
}

#[test]
fn continued_sum_regime() {
    let p = psl2z(1, c(0.0, 1.0), 1.0).with_s_cont(c(1.0, 0.0));
    assert!(matches!(qs_continued(&p, 10), Err(RadsumError::Regime(_))));
    let p = p.with_fraction(1, 2).with_s_cont(c(1.5, 0.0));
    assert!(matches!(
        qs_continued(&p, 10),
        Err(RadsumError::Unsupported(_))
    ));
}

#[test]
fn continued_rows_brute_force() {
    // One double coset (c = 1) of PSL2(Z), summed row by row with a long range of d.
    let (z, u) = (c(0.2, 0.9), c(2.5, 0.0));
    let p = psl2z(1, z, 1.0).with_s_cont(u);
    let sums = qs_continued(&p, 1).unwrap();
    let mut ts = e(-z);
    let mut tsa = c(0.0, 0.0);
    for d in -200_000i64..=200_000 {
        let row = CosetRow {
            c: 1,
            d,
            a: 0,
            pdet: 1,
        };
        let (gz, _) = GroupElement::new(0, -1, 1, d).unwrap().act_jac(z);
        ts += e(-gz) * treg(0, 1.0, &row, z, u).unwrap();
        tsa += tsa_term(0, 1.0, &row, u);
    }
    assert!((sums.ts - ts).norm() < 1e-9 * ts.norm());
    // The omitted |d| > 2e5 rows of TSa are of relative size about 1e-8 at u = 2.5.
    assert!((sums.tsa_sum - tsa).norm() < 1e-7 * tsa.norm());
}

#[test]
fn invariance_of_series() {
    let s = GroupElement::new(0, -1, 1, 0).unwrap();
    let t = GroupElement::new(1, 1, 0, 1).unwrap();
    let j = SeriesEvaluator::new(j_series(60), 0.4);
    let z = c(0.0, 2.0);
    assert!(invariance_residual(&j, &s, z, 0).unwrap() < 1e-9);
    assert_eq!(invariance_residual(&j, &t, c(0.25, 1.5), 0).unwrap(), 0.0);

    let d = SeriesEvaluator::new(delta(60), 0.4);
    let scale = d.eval(z).unwrap().norm();
    assert!(invariance_residual(&d, &s, z, 6).unwrap() < 1e-6 * scale);
    assert_eq!(invariance_residual(&d, &t, c(-0.5, 0.75), 6).unwrap(), 0.0);

    assert!(matches!(
        invariance_residual(&j, &s, c(0.0, 1.0) * 0.3, 0),
        Err(RadsumError::OutOfRegion(_))
    ));
}

#[test]
fn invariance_of_direct_sum() {
    let f = DirectEvaluator {
        params: psl2z(1, c(0.0, 1.0), 60.0),
    };
    let s = GroupElement::new(0, -1, 1, 0).unwrap();
    let r = invariance_residual(&f, &s, c(0.1, 1.2), 0).unwrap();
    assert!(r < 0.2, "{r}");
    assert!(invariance_residual(&f, &s, c(0.0, 30.0), 0).is_err());
}
