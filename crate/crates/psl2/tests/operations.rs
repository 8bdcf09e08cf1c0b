use num_complex::Complex64;
use num_rational::Ratio;
use psl2::arith::{ex_compose, exact_divisors, power_gcd, sigma, square_gcd};
use psl2::{
    cusps, genus_gamma0, is_member, scaling_element, CosetSet, DoubleCosetKey, Generator, Group,
    GroupElement, GroupSpec, Point,
};

fn el(a: i64, b: i64, c: i64, d: i64) -> GroupElement {
    GroupElement::new(a, b, c, d).unwrap()
}

fn group(text: &str) -> Group {
    Group::new(text.parse().unwrap()).unwrap()
}

#[test]
fn canonical_representatives() {
    assert_eq!(el(2, 0, 0, 2), GroupElement::IDENTITY);
    assert_eq!(el(0, -1, 1, 0).entries(), [0, -1, 1, 0]);
    assert_eq!(el(-3, -1, 0, -3).entries(), [3, 1, 0, 3]);
    assert!(GroupElement::new(1, 0, 0, -1).is_err());
}

#[test]
fn algebra_examples() {
    assert_eq!(GroupElement::S * GroupElement::S, GroupElement::IDENTITY);
    assert_eq!(GroupElement::T.conjugate(), GroupElement::T.inverse());
    assert_eq!(GroupElement::T.conjugate().entries(), [1, -1, 0, 1]);
    assert_eq!(el(1, 0, 2, 1).inverse(), el(1, 0, -2, 1));
    assert_eq!(el(1, 0, 2, 1).inverse().entries(), [-1, 0, 2, -1]);
}

#[test]
fn invariant_examples() {
    assert_eq!(
        el(1, 0, 2, 1).invariants(),
        (1, 2, 1, Some(Ratio::new(1, 4)))
    );
    assert_eq!(GroupElement::T.invariants(), (1, 0, 1, None));
    assert_eq!(
        el(0, -1, 2, 0).invariants(),
        (2, 2, 0, Some(Ratio::new(1, 2)))
    );
}

#[test]
fn action_examples() {
    let i = Complex64::new(0.0, 1.0);
    let (w, j) = GroupElement::S.act_jac(i);
    assert!((w - i).norm() < 1e-15 && (j + 1.0).norm() < 1e-15);
    let z = Complex64::new(0.3, 0.7);
    let (w, j) = GroupElement::T.act_jac(z);
    assert!((w - z - 1.0).norm() < 1e-15 && (j - 1.0).norm() < 1e-15);
    assert_eq!(
        el(0, -1, 2, 0).act_point(Point::Infinity),
        Point::rational(0, 1)
    );
    assert_eq!(GroupElement::T.act_point(Point::Infinity), Point::Infinity);
}

#[test]
fn membership_examples() {
    let g2 = GroupSpec::gamma0(2).unwrap();
    assert!(is_member(&g2, &GroupElement::T).unwrap());
    assert!(!is_member(&g2, &GroupElement::S).unwrap());
    let plus = GroupSpec::gamma0_plus(2, vec![]).unwrap();
    assert!(is_member(&plus, &el(0, -1, 2, 0)).unwrap());
    assert!(!is_member(&plus, &el(0, -1, 3, 0)).unwrap());
}

#[test]
fn lambda_examples() {
    let g = group("Gamma0Pipe:3:3");
    assert_eq!(g.lambda_of_word(&[Generator::X]).unwrap(), 1);
    assert_eq!(
        g.lambda_of_word(&[Generator::X, Generator::XInv]).unwrap(),
        0
    );
    let g = group("Gamma0Pipe:6:2:1,3");
    assert_eq!(g.lambda_of_word(&[Generator::W(3)]).unwrap(), 0);
    let x = g.generator(Generator::X).unwrap();
    assert_eq!(g.lambda(&x), Some(1));
}

#[test]
fn fricke_examples() {
    assert!(group("Gamma0Plus:2").is_fricke());
    assert!(!group("Gamma0:2").is_fricke());
    assert!(group("PSL2Z").is_fricke());
}

#[test]
fn cusp_examples() {
    let list = |t: &str| -> Vec<(Point, i64)> {
        cusps(&group(t))
            .iter()
            .map(|c| (c.point, c.width.to_integer()))
            .collect()
    };
    assert_eq!(list("Gamma0:1"), vec![(Point::Infinity, 1)]);
    assert_eq!(
        list("Gamma0:2"),
        vec![(Point::Infinity, 1), (Point::rational(0, 1), 2)]
    );
    assert_eq!(
        list("Gamma0:4"),
        vec![
            (Point::Infinity, 1),
            (Point::rational(0, 1), 4),
            (Point::rational(1, 2), 1)
        ]
    );
    assert_eq!(list("Gamma0Plus:2"), vec![(Point::Infinity, 1)]);
}

#[test]
fn scaling_examples() {
    let g = group("Gamma0:2");
    let zero = cusps(&g)[1];
    let data = scaling_element(&g, &zero).unwrap();
    assert_eq!(data.sigma.entries(), [0, -1, 2, 0]);
    assert_eq!(data.pdet, 2);
    let sig = data.sigma;
    assert!(g.is_member(&(sig * GroupElement::T * sig.inverse())));

    let g = group("Gamma0:4");
    let half = cusps(&g)[2];
    let data = scaling_element(&g, &half).unwrap();
    assert_eq!(data.sigma.act_point(Point::Infinity), Point::rational(1, 2));
    assert_eq!(data.cusp.width.to_integer(), 1);

    let g = group("PSL2Z");
    let data = scaling_element(&g, &cusps(&g)[0]).unwrap();
    assert_eq!(data.sigma, GroupElement::IDENTITY);
}

#[test]
fn rectangle_examples() {
    let g = group("PSL2Z");
    let set = CosetSet::new(&g, Point::Infinity, Point::Infinity).unwrap();
    let rows: Vec<(i64, i64)> = set.rectangle(1.0).map(|r| (r.c, r.d)).collect();
    assert_eq!(rows, vec![(1, -1), (1, 0), (1, 1)]);

    let g = group("Gamma0:2");
    let set = CosetSet::new(&g, Point::Infinity, Point::Infinity).unwrap();
    let rows: Vec<(i64, i64)> = set.rectangle(2.0).map(|r| (r.c, r.d)).collect();
    assert_eq!(rows, vec![(2, -3), (2, -1), (2, 1), (2, 3)]);

    let set = CosetSet::new(&g, Point::rational(0, 1), Point::Infinity).unwrap();
    let rows: Vec<_> = set.rectangle(2.0).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!((r.c, r.pdet, r.d % 2), (2, 2, 0));
    }
}

#[test]
fn double_coset_examples() {
    let g = group("PSL2Z");
    let set = CosetSet::new(&g, Point::Infinity, Point::Infinity).unwrap();
    let keys: Vec<_> = set.double_cosets(2).collect();
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
    assert_eq!(set.double_cosets(1).count(), 1);

    let g = group("Gamma0:2");
    let set = CosetSet::new(&g, Point::Infinity, Point::Infinity).unwrap();
    let cs: Vec<i64> = set.double_cosets(4).map(|k| k.c).collect();
    assert_eq!(cs, vec![2, 4, 4]);
}

#[test]
fn genus_examples() {
    assert_eq!(genus_gamma0(1), 0);
    assert_eq!(genus_gamma0(2), 0);
    assert_eq!(genus_gamma0(11), 1);
}

#[test]
fn divisor_examples() {
    assert_eq!(exact_divisors(12), vec![1, 3, 4, 12]);
    assert_eq!(ex_compose(3, 4), 12);
    assert_eq!(square_gcd(48, 24), 4);
    assert_eq!(power_gcd(6, 24), 24);
    assert_eq!(power_gcd(2, 24), 8);
    assert_eq!(sigma(6, 1), 12);
}
