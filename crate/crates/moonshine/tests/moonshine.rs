use moonshine::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use psl2::{GroupElement, GroupSpec};
use qseries::{eta_quotient, j_series, BigRational, LaurentSeries};

fn c(z_re: f64, z_im: f64) -> Complex64 {
    Complex64::new(z_re, z_im)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Dense `prod (1 - p^m q^n)^(-c(mn))` for `m <= max_p` and `q` exponents in
/// `[-max_p, q_hi)`: the logarithm is summed factor by factor, then exponentiated in `p`.
fn brute_product(f: &LaurentSeries, max_p: usize, q_hi: i64) -> Vec<Vec<BigRational>> {
    let off = max_p as i64;
    let width = (q_hi + off) as usize;
    let zero = vec![BigRational::zero(); width];
    let mut log = vec![zero.clone(); max_p + 1];
    let mut factors = vec![(1i64, -1i64)];
    for m in 1..=off {
        for n in 1..q_hi {
            factors.push((m, n));
        }
    }
    for (m, n) in factors {
        let e = BigRational::from_integer(f.int_coeff(m * n));
        let mut k = 1;
        while k * m <= off && k * n < q_hi {
            log[(k * m) as usize][(k * n + off) as usize] += &e / BigRational::from_integer(big(k));
            k += 1;
        }
    }
    let mul = |a: &[BigRational], b: &[BigRational]| {
        let mut out = vec![BigRational::zero(); width];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = i + j;
                if k >= off as usize && k - (off as usize) < width {
                    out[k - off as usize] += x * y;
                }
            }
        }
        out
    };
    let mut exp = vec![zero.clone(); max_p + 1];
    exp[0][off as usize] = BigRational::one();
    for m in 1..=max_p {
        let mut acc = zero.clone();
        for j in 1..=m {
            let t = mul(&log[j], &exp[m - j]);
            let jj = BigRational::from_integer(big(j as i64));
            for (a, b) in acc.iter_mut().zip(t) {
                *a += &jj * b;
            }
        }
        let mm = BigRational::from_integer(big(m as i64));
        exp[m] = acc.into_iter().map(|x| x / &mm).collect();
    }
    exp
}

#[test]
fn gdim_matches_brute_force_product() {
    let j = j_series(60);
    let bundle = verma_gdim(&j, 3, 3).unwrap();
    let dense = brute_product(&j.truncate(30), 3, 8);
    for m in 0..=3usize {
        for n in -(m as i64)..=3 {
            assert_eq!(
                BigRational::from_integer(bundle.coeff(m, n).unwrap()),
                dense[m][(n + 3) as usize],
                "p^{m} q^{n}"
            );
        }
    }
}

#[test]
fn gdim_examples() {
    let j = j_series(60);
    let b = verma_gdim(&j, 4, 4).unwrap();
    assert_eq!(b.coeff(1, 1).unwrap(), big(196884));
    for m in 1..=4 {
        assert_eq!(b.coeff(m, -(m as i64)).unwrap(), big(1));
    }
    assert_eq!(b.exp_form, b.product_form);
    assert_eq!(b.truncation, (4, 4));
    assert!(matches!(b.coeff(5, 0), Err(MoonshineError::Truncation(_))));
    assert!(matches!(b.coeff(1, 5), Err(MoonshineError::Truncation(_))));
}

#[test]
fn gdim_rejects_bad_input() {
    assert!(matches!(
        verma_gdim(&j_series(10), 4, 4),
        Err(MoonshineError::Truncation(_))
    ));
    let shifted = &j_series(60) + &LaurentSeries::constant(qseries::BigRational::one(), 60);
    assert!(matches!(
        verma_gdim(&shifted, 2, 2),
        Err(MoonshineError::InvalidInput(_))
    ));
    let t = LaurentSeries::from_ints(0, &[1, 2, 3]);
    assert!(matches!(
        verma_gdim(&t, 1, 1),
        Err(MoonshineError::InvalidInput(_))
    ));
    assert!(matches!(
        verma_gdim(&j_series(60), 0, 1),
        Err(MoonshineError::InvalidInput(_))
    ));
}

#[test]
fn gdim_of_other_hauptmoduln() {
    let t2b = eta_quotient(&[(1, 24), (2, -24)], 24, 60).unwrap();
    let b = verma_gdim(&t2b, 3, 3).unwrap();
    assert_eq!(b.coeff(1, 1).unwrap(), big(276));
    let dense = brute_product(&t2b.truncate(30), 3, 8);
    for m in 0..=3usize {
        for n in -(m as i64)..=3 {
            assert_eq!(
                BigRational::from_integer(b.coeff(m, n).unwrap()),
                dense[m][(n + 3) as usize]
            );
        }
    }
}

#[test]
fn z_series_slices() {
    let j = j_series(60);
    let z = z_series(&j, 4, 4).unwrap();
    for n in -1..=4 {
        assert_eq!(z.coeff(1, n), j.coeff(n));
    }
    let sq = j.mul_series(&j);
    for n in -2..=4 {
        let mut want = sq.coeff(n).unwrap();
        if n == 0 {
            want -= qseries::BigRational::from_integer(big(2 * 196884));
        }
        assert_eq!(z.coeff(2, n).unwrap(), want, "q^{n}");
    }
}

#[test]
fn denominator_identity_vanishes() {
    let j = j_series(60);
    assert!(denominator_residual(&j, 4, 4).unwrap().is_zero_to_prec());
    let one = denominator_residual(&j, 1, 4).unwrap();
    assert_eq!(one.max_p(), 1);
    assert!(one.is_zero_to_prec());
}

#[test]
fn denominator_quotient_is_symmetric() {
    let j = j_series(60);
    let q = denominator_quotient(&j, 3, 3).unwrap();
    assert_eq!(q.from_j, q.product);
    assert!(q.is_symmetric(3));
    assert_eq!(
        q.from_j.coeff(1, 1).unwrap(),
        qseries::BigRational::from_integer(big(-196884))
    );
}

#[test]
fn denominator_rejects_twisted_input() {
    let t2b = eta_quotient(&[(1, 24), (2, -24)], 24, 60).unwrap();
    assert!(matches!(
        denominator_residual(&t2b, 2, 2),
        Err(MoonshineError::Unsupported(_))
    ));
    assert!(matches!(
        denominator_quotient(&t2b, 2, 2),
        Err(MoonshineError::Unsupported(_))
    ));
}

#[test]
fn fricke_domination_for_j() {
    let j = j_series(60);
    assert!(fricke_domination(&j, 4, 4).unwrap());
    let b = verma_gdim(&j, 4, 4).unwrap();
    for n in -1..=4 {
        assert_eq!(b.z_coeff(1, n).unwrap(), b.coeff(1, n).unwrap());
    }
    assert_eq!(b.z_coeff(1, 1).unwrap(), big(196884));
    assert_eq!(b.z_coeff(2, 1).unwrap(), big(42987520));
    assert_eq!(b.coeff(2, 1).unwrap(), big(42987520));
    assert_eq!(
        b.coeff(2, 0).unwrap() - b.z_coeff(2, 0).unwrap(),
        big(196884)
    );
    assert!(b.z_coeff(3, 2).unwrap() < b.coeff(3, 2).unwrap());
}

#[test]
fn branching_over_gamma0_2() {
    let report = branching_residuals(1, 3, 1000).unwrap();
    assert_eq!(report.width, 2);
    assert_eq!(report.sigma_zero, GroupElement::new(0, -1, 2, 0).unwrap());
    let r0 = &report.rows[0];
    assert_eq!(r0.j_side, 24.0);
    assert!((r0.infinity_part + 8.0).abs() < 1e-3);
    assert!((r0.zero_part - 32.0).abs() < 1e-3);
    assert_eq!(report.rows[1].j_side, 196884.0);
    assert!(report.max_unweighted_relative() < 1e-4);
    for row in &report.rows {
        let gap =
            row.unweighted_residual - row.residual - (report.width - 1) as f64 * row.zero_part;
        assert!(gap.abs() <= 1e-9 * row.j_side.abs());
    }
    assert!(report.max_relative() > 0.5);
}

#[test]
fn branching_residuals_shrink() {
    let coarse = branching_residuals(1, 3, 250).unwrap();
    let fine = branching_residuals(1, 3, 2000).unwrap();
    assert!(fine.max_unweighted_relative() < coarse.max_unweighted_relative());
    assert!(matches!(
        branching_residuals(0, 3, 10),
        Err(MoonshineError::InvalidInput(_))
    ));
}

#[test]
fn hecke_rademacher_at_squarefree_index() {
    for n in [2u64, 3] {
        let h = hecke_rademacher_identity(n, 3, 2000, c(0.0, 1.0), 100.0).unwrap();
        assert!(h.polar_part_exact);
        assert!(h.max_relative() < 1e-4, "{n}: {:?}", h.terms);
        assert_eq!(h.fractional.len(), 1);
        assert_eq!((h.fractional[0].g, h.fractional[0].h), (1, n as i64));
        assert!(h.max_fractional() < 1e-12);
    }
    assert_eq!(
        hecke_rademacher_identity(2, 1, 100, c(0.0, 1.0), 10.0)
            .unwrap()
            .terms[0]
            .oracle,
        72.0
    );
}

#[test]
fn hecke_rademacher_trivial_and_invalid() {
    let h = hecke_rademacher_identity(1, 2, 200, c(0.0, 1.0), 10.0).unwrap();
    assert!(h.polar_part_exact);
    assert!(h.fractional.is_empty());
    assert_eq!(h.terms[1].oracle, 196884.0);
    let six = hecke_rademacher_identity(6, 0, 50, c(0.0, 1.0), 20.0).unwrap();
    let orders: Vec<(i64, i64)> = six.fractional.iter().map(|t| (t.g, t.h)).collect();
    assert_eq!(orders, vec![(3, 2), (2, 3), (1, 6)]);
    assert!(six.max_fractional() < 1e-10);
    assert!(matches!(
        hecke_rademacher_identity(4, 2, 10, c(0.0, 1.0), 10.0),
        Err(MoonshineError::InvalidInput(_))
    ));
}

#[test]
fn solid_tori_examples() {
    let psl = GroupSpec::psl2z();
    assert!(solid_torus_equivalent(&psl, c(0.0, 1.0), c(1.0, 1.0), 1e-6).unwrap());
    assert!(!solid_torus_equivalent(&psl, c(0.0, 1.0), c(0.0, 2.0), 1e-6).unwrap());
    assert!(solid_torus_equivalent(&psl, c(0.3, 0.8), -1.0 / c(0.3, 0.8), 1e-6).unwrap());
    let j = Hauptmodul::J;
    assert!((j.value(c(0.0, 1.0)) - 984.0).norm() < 1e-9);
    assert!((j.value(c(0.0, 2.0)) - 286752.0).norm() < 1e-6);

    let g2 = GroupSpec::gamma0(2).unwrap();
    for z in [c(0.3, 0.4), c(-0.7, 0.25), c(0.1, 1.3)] {
        assert!(solid_torus_equivalent(&g2, z, z + 1.0, 1e-6).unwrap());
    }
    let z = c(-0.45, 0.5);
    let w = z / (2.0 * z + 1.0);
    assert!(w.im >= MIN_IM);
    assert!(solid_torus_equivalent(&g2, z, w, 1e-6).unwrap());
    assert!(!solid_torus_equivalent(&g2, c(0.0, 1.0), c(0.0, 0.5), 1e-6).unwrap());
}

#[test]
fn solid_tori_errors() {
    let psl = GroupSpec::psl2z();
    assert!(matches!(
        solid_torus_equivalent(&psl, c(0.0, 0.1), c(0.0, 1.0), 1e-6),
        Err(MoonshineError::InvalidInput(_))
    ));
    let g3 = GroupSpec::gamma0(3).unwrap();
    assert!(matches!(
        solid_torus_equivalent(&g3, c(0.0, 1.0), c(0.0, 1.0), 1e-6),
        Err(MoonshineError::Unsupported(_))
    ));
}

#[test]
fn fricke_invariant_hauptmodul() {
    let t = Hauptmodul::T2A;
    for z in [c(0.3, 0.8), c(-0.2, 0.6), c(0.05, 0.75)] {
        let w = -1.0 / (2.0 * z);
        assert!(w.im >= MIN_IM);
        let (a, b) = (t.value(z), t.value(w));
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "{a} {b}");
    }
    let b = Hauptmodul::T2B;
    let z = c(0.3, 0.8);
    assert!((b.value(z) - b.value(-1.0 / (2.0 * z))).norm() > 1.0);

    let s = t.series(8).unwrap();
    assert_eq!(s.coeff(-1).unwrap(), qseries::BigRational::one());
    assert!(s.coeff(0).unwrap().is_zero());
    assert_eq!(s.int_coeff(1), big(4372));
    assert_eq!(s.int_coeff(2), big(96256));
    assert!((s.lo()..s.prec()).all(|k| s.coeff(k).unwrap().is_integer()));
    let gplus = GroupSpec::gamma0_plus(2, vec![]).unwrap();
    assert_eq!(Hauptmodul::for_spec(&gplus).unwrap(), Hauptmodul::T2A);
    assert!(solid_torus_equivalent(&gplus, c(0.3, 0.8), -1.0 / c(0.6, 1.6), 1e-6).unwrap());
}

#[test]
fn hauptmodul_series_match_values() {
    for h in [Hauptmodul::J, Hauptmodul::T2B, Hauptmodul::T2A] {
        let s = h.series(40).unwrap();
        for z in [c(0.0, 1.0), c(0.37, 0.9)] {
            let (a, b) = (s.eval_at(z), h.value(z));
            assert!((a - b).norm() < 1e-9 * a.norm(), "{h:?} {a} {b}");
        }
    }
}

#[test]
fn ns_wellformed_examples() {
    assert!(ns_equivalence_wellformed(12, &[1, 3, 4, 12]).unwrap());
    assert!(ns_equivalence_wellformed(12, &[1, 3]).unwrap());
    assert!(!ns_equivalence_wellformed(12, &[1, 3, 4]).unwrap());
    assert!(!ns_equivalence_wellformed(12, &[3]).unwrap());
    assert!(matches!(
        ns_equivalence_wellformed(12, &[1, 2]),
        Err(MoonshineError::InvalidInput(_))
    ));
}

#[test]
fn scaling_square_examples() {
    let g = |a, b, c, d| GroupElement::new(a, b, c, d).unwrap();
    let spec = |m| GroupSpec::gamma0(m).unwrap();
    assert!(scaling_square(&spec(2), &g(0, -1, 2, 0)).unwrap());
    assert!(scaling_square(&spec(4), &g(1, 0, 2, 1)).unwrap());
    assert!(!scaling_square(&spec(9), &g(3, 1, 0, 3)).unwrap());
    assert!(scaling_square(&spec(5), &GroupElement::IDENTITY).unwrap());
    assert!(matches!(
        scaling_square(&spec(2), &g(1, 0, 1, 1)),
        Err(MoonshineError::InvalidInput(_))
    ));
    let plus = GroupSpec::gamma0_plus(2, vec![]).unwrap();
    assert!(matches!(
        scaling_square(&plus, &g(0, -1, 2, 0)),
        Err(MoonshineError::InvalidInput(_))
    ));
}

#[test]
fn characterization_examples() {
    let opts = CharCheckOptions::default();
    let psl = char_check(&GroupSpec::psl2z(), opts).unwrap();
    assert!(psl.passes, "{psl:?}");
    let plus = char_check(&GroupSpec::gamma0_plus(2, vec![]).unwrap(), opts).unwrap();
    assert!(plus.passes, "{plus:?}");
    let g11 = char_check(&GroupSpec::gamma0(11).unwrap(), opts).unwrap();
    assert!(!g11.passes);
    assert_eq!(g11.per_condition, [true, false, true, true]);
    assert!(g11.genus_residual > 0.1);
}

#[test]
fn characterization_structural_conditions() {
    let quick = CharCheckOptions {
        c_max: 50,
        ..CharCheckOptions::default()
    };
    let g9 = char_check(&GroupSpec::gamma0(9).unwrap(), quick).unwrap();
    assert!(g9.per_condition[2] && g9.per_condition[3]);
    let pipe = char_check(&GroupSpec::pipe(4, 2, vec![1]).unwrap(), quick).unwrap();
    assert!(!pipe.per_condition[0]);
    let big = GroupSpec::gamma0(37).unwrap();
    assert!(matches!(
        char_check(&big, quick),
        Err(MoonshineError::Unsupported(_))
    ));
}
