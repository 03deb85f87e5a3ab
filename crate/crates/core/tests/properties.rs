use eikq::analysis::eikonal_residual;
use eikq::polyring::{
    parse_poly_text, to_poly_text, Coefficient, Poly, Polynomial, Rational, RationalMatrix,
};
use proptest::prelude::*;

const N: usize = 3;

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, N), coeff()), 0..6)
        .prop_map(|terms| Polynomial::from_terms(N, terms).unwrap())
}

/// Homogeneous of degree `d`: the last exponent fills up the degree.
fn form(d: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0..=d, 0..=d, coeff()), 1..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(a, b, c)| {
            let a = a.min(d);
            let b = b.min(d - a);
            (vec![a, b, d - a - b], c)
        });
        Polynomial::from_terms(N, terms).unwrap()
    })
}

/// Exactly orthogonal: the Cayley transform of a small antisymmetric matrix.
fn orthogonal() -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-3i64..=3, 1i64..=3), 3).prop_map(|e| {
        let r = |(p, q): (i64, i64)| Rational::new(p.into(), q.into());
        let (a, b, c) = (r(e[0]), r(e[1]), r(e[2]));
        let s = RationalMatrix::from_rows(vec![
            vec![Rational::from_integer(0.into()), a.clone(), b.clone()],
            vec![-a, Rational::from_integer(0.into()), c.clone()],
            vec![-b, -c, Rational::from_integer(0.into())],
        ])
        .unwrap();
        RationalMatrix::cayley(&s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::constant(N, Rational::from_integer(1.into())), a.clone());
    }

    #[test]
    fn euler_identity(f in form(4)) {
        let mut radial = Polynomial::zero(N);
        for i in 0..N {
            radial = &radial + &(&Polynomial::var(N, i) * &f.partial_derivative(i).unwrap());
        }
        prop_assert_eq!(radial, f.scale_int(4));
    }

    #[test]
    fn chain_rule_under_rotation(f in form(4), u in orthogonal()) {
        prop_assert!(u.is_orthogonal(0.0));
        let g = f.substitute_linear(&u).unwrap();
        prop_assert_eq!(g.gradient_norm_sq(), f.gradient_norm_sq().substitute_linear(&u).unwrap());
        prop_assert_eq!(g.laplacian(), f.laplacian().substitute_linear(&u).unwrap());
        prop_assert_eq!(
            eikonal_residual(&g, 4).unwrap(),
            eikonal_residual(&f, 4).unwrap().substitute_linear(&u).unwrap()
        );
    }

    #[test]
    fn split_recombines(f in poly(), first in 0usize..N) {
        let parts = f.homogeneous_split(&[vec![first]]).unwrap();
        let sum = parts.values().fold(Polynomial::zero(N), |acc, p| &acc + p);
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn text_round_trip(f in poly()) {
        let text = to_poly_text(&f);
        let back = parse_poly_text(&text).unwrap();
        prop_assert_eq!(to_poly_text(&back), text);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn float_view_agrees(f in poly(), x in prop::collection::vec(-3i64..=3, N)) {
        let exact: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
        let float: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let want = f.evaluate(&exact).unwrap();
        let got = f.to_float().evaluate(&float).unwrap();
        let want = want.to_f64();
        prop_assert!((want - got).abs() <= 1e-9 * want.abs().max(1.0));
    }
}

#[test]
fn zero_is_additive_identity() {
    let f = parse_poly_text("n 2\n2 0 3\n").unwrap();
    assert_eq!(&f + &Poly::zero(2), f);
}
