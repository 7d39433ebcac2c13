use proptest::prelude::*;
use vertexlab::algebra::{
    half_power_convert, rat, Grading, HalfPowerVars, LaurentPoly, Monomial, Rational, RationalFunction, TruncatedSeries,
};

fn mono3() -> impl Strategy<Value = Monomial> {
    (-2i32..3, -2i32..3, -2i32..3).prop_map(|(a, b, c)| Monomial::doubled(&[(0, a), (1, b), (2, c)]))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((mono3(), -4i64..5), 0..5)
        .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn int_mono() -> impl Strategy<Value = Monomial> {
    (-2i32..3, -2i32..3).prop_filter("nontrivial", |&(a, b)| (a, b) != (0, 0)).prop_map(|(a, b)| Monomial::from_exps(&[(0, a), (1, b)]))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn ratfun_equality_is_cross_multiplication(p in poly(), w1 in int_mono(), w2 in int_mono(), k in int_mono()) {
        // p/((1-w1)(1-w2)) equals p(1-k)/((1-w1)(1-w2)(1-k))
        let f = RationalFunction::from_parts(p.clone(), &[w1, w2]).unwrap();
        let g = RationalFunction::from_parts(p.mul_one_minus(k), &[w1, w2, k]).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(f.clone().cancel(), g.cancel());
        let h = &f + &RationalFunction::one();
        prop_assert!(h != f);
    }

    #[test]
    fn geometric_times_one_minus_is_one(a in -3i32..4, b in 1i32..3, neg in any::<bool>()) {
        // grading by total degree of the first two variables
        let w = Monomial::from_exps(&[(0, if neg { -b } else { b }), (1, if neg { -a.abs() } else { a.abs() })]);
        let mut weights = [0i64; vertexlab::algebra::MAX_VARS];
        weights[0] = if neg { -1 } else { 1 };
        weights[1] = if neg { -1 } else { 1 };
        let g = vec![Grading::weighted(weights, 16)];
        let s = TruncatedSeries::<Rational>::geometric(&g, rat(1), w).unwrap();
        let one_minus = TruncatedSeries::from_terms(&g, [(Monomial::ONE, rat(1)), (w, rat(-1))]);
        let prod = s.mul(&one_minus);
        prop_assert_eq!(prod.first_difference(&TruncatedSeries::one(&g)), None);
        // the opposite orientation of the same factor
        let s2 = TruncatedSeries::<Rational>::geometric(&g, rat(1), w.inv()).unwrap();
        let one_minus2 = TruncatedSeries::from_terms(&g, [(Monomial::ONE, rat(1)), (w.inv(), rat(-1))]);
        prop_assert_eq!(s2.mul(&one_minus2).first_difference(&TruncatedSeries::one(&g)), None);
    }

    #[test]
    fn half_power_is_multiplicative(a in -3i32..4, b in -3i32..4, c in -3i32..4, d in -3i32..4) {
        // (a - b) even keeps t^{a/2} q^{b/2} on the convertible sublattice
        let v = HalfPowerVars { t: 0, q: 1, big_q: 2, kappa: 3 };
        let x = LaurentPoly::monomial(Monomial::doubled(&[(0, a), (1, a + 2 * b)]));
        let y = LaurentPoly::from_terms([
            (Monomial::doubled(&[(0, c), (1, c + 2 * d)]), rat(3)),
            (Monomial::doubled(&[(0, 2), (1, 0)]), rat(-1)),
        ]);
        let lhs = half_power_convert(&(&x * &y), &v).unwrap();
        let rhs = &half_power_convert(&x, &v).unwrap() * &half_power_convert(&y, &v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn half_power_examples() {
    let v = HalfPowerVars { t: 0, q: 1, big_q: 2, kappa: 3 };
    let conv = |m: Monomial| half_power_convert(&LaurentPoly::monomial(m), &v).unwrap();
    assert_eq!(conv(Monomial::doubled(&[(0, 1), (1, 1)])), LaurentPoly::monomial(Monomial::from_exps(&[(2, 1)])));
    // t²q → -Q³κ^{1/2}
    assert_eq!(
        conv(Monomial::from_exps(&[(0, 2), (1, 1)])),
        LaurentPoly::term(rat(-1), Monomial::doubled(&[(2, 6), (3, 1)]))
    );
    assert_eq!(conv(Monomial::from_exps(&[(0, 1), (1, 1)])), LaurentPoly::monomial(Monomial::from_exps(&[(2, 2)])));
}

#[test]
fn substitution_examples() {
    use vertexlab::algebra::Subst;
    // t1 → q, t2 → t^{-1} on 1/((1-t1^{-1})(1-t2^{-1})); vars t1,t2,q,t = 0..3
    let f = RationalFunction::from_parts(
        LaurentPoly::one(),
        &[Monomial::from_exps(&[(0, -1)]), Monomial::from_exps(&[(1, -1)])],
    )
    .unwrap();
    let s = Subst::new().to(0, Monomial::from_exps(&[(2, 1)])).to(1, Monomial::from_exps(&[(3, -1)]));
    let want = RationalFunction::from_parts(
        LaurentPoly::one(),
        &[Monomial::from_exps(&[(2, -1)]), Monomial::from_exps(&[(3, 1)])],
    )
    .unwrap();
    assert_eq!(f.substitute(&s).unwrap(), want);
    assert_eq!(f.substitute(&Subst::new()).unwrap(), f);
    // m4 → -(q/t)^{1/2} on 1 + m4, vars m4,q,t = 0,1,2
    let p = LaurentPoly::from_terms([(Monomial::ONE, rat(1)), (Monomial::from_exps(&[(0, 1)]), rat(1))]);
    let s = Subst::new().set(0, rat(-1), Monomial::doubled(&[(1, 1), (2, -1)]));
    let want = LaurentPoly::from_terms([(Monomial::ONE, rat(1)), (Monomial::doubled(&[(1, 1), (2, -1)]), rat(-1))]);
    assert_eq!(p.substitute(&s).unwrap(), want);
}
