use proptest::prelude::*;
use vertexlab::algebra::{rat, Grading, LaurentPoly, Monomial, Rational, RationalFunction, TruncatedSeries};
use vertexlab::characters::{balanced_limit, index, pleth_sym_series, Character, SlopeRegime};
use vertexlab::partitions::partitions_of;

fn t(e: [i32; 3]) -> Monomial {
    Monomial::from_exps(&[(0, e[0]), (1, e[1]), (2, e[2])])
}

// Random Serre-symmetric characters: Σ c (u - κ/u).
fn serre_char() -> impl Strategy<Value = Character> {
    proptest::collection::vec(((-2i32..3, -2i32..3, -2i32..3), -2i64..3), 1..5).prop_map(|v| {
        let mut p = LaurentPoly::zero();
        for ((a, b, c), k) in v {
            let u = t([a, b, c]);
            p.add_term(u, rat(k));
            p.add_term(Character::kappa() / u, rat(-k));
        }
        Character::new(p).unwrap()
    })
}

fn slope() -> impl Strategy<Value = SlopeRegime> {
    (-9i64..10, -9i64..10).prop_map(|(a, b)| SlopeRegime::explicit([a, b, -a - b]).unwrap())
}

proptest! {
    #[test]
    fn index_is_odd_under_negation(v in serre_char(), s in slope()) {
        prop_assert!(v.serre_check());
        if let Ok(i) = index(&v, &s) {
            prop_assert_eq!(index(&v, &s.negate()).unwrap(), -i);
        }
    }

    #[test]
    fn limit_depends_only_on_chamber(w in proptest::collection::vec((-2i32..3, -2i32..3), 1..4), k in 1i64..5) {
        // f = Σ_w w/(1-w); a slope and a positive multiple share a chamber
        let r = [2i64, -1, -1];
        let s1 = SlopeRegime::explicit(r).unwrap();
        let s2 = SlopeRegime::explicit([r[0] * k, r[1] * k, r[2] * k]).unwrap();
        let mut f = RationalFunction::zero();
        for (a, b) in w {
            let m = t([a, b, 0]);
            if s1.grade(&m).0 == 0 { continue; }
            f = &f + &RationalFunction::from_parts(LaurentPoly::monomial(m), &[m]).unwrap();
        }
        prop_assert_eq!(balanced_limit(&f, &s1).unwrap(), balanced_limit(&f, &s2).unwrap());
    }
}

// Sym(z/(1-t)) = Σ_j z^j/∏_{i≤j}(1-t^i); the z^j t^k coefficient counts
// partitions of k with at most j parts.
#[test]
fn pleth_counts_partitions() {
    let g = vec![Grading::degree(&[0], 6), Grading::degree(&[1], 6)];
    let arg = TruncatedSeries::<Rational>::from_terms(&g, (0..=6).map(|k| (Monomial::from_exps(&[(0, 1), (1, k)]), rat(1))));
    let s = pleth_sym_series(&arg).unwrap();
    for j in 0..=6u32 {
        for k in 0..=6u32 {
            let want = partitions_of(k).iter().filter(|p| p.length() as u32 <= j).count() as i64;
            assert_eq!(s.coeff(&Monomial::from_exps(&[(0, j as i32), (1, k as i32)])), rat(want), "z^{} t^{}", j, k);
        }
    }
}

#[test]
fn pleth_first_term_is_argument() {
    // vars z, m1, m2, t1, t2
    let g = vec![Grading::degree(&[0], 1)];
    let c = RationalFunction::from_parts(
        -(LaurentPoly::one_minus(Monomial::var(1)).mul_one_minus(Monomial::var(2))),
        &[Monomial::from_exps(&[(3, -1)]), Monomial::from_exps(&[(4, -1)])],
    )
    .unwrap();
    let arg = TruncatedSeries::term(&g, Monomial::var(0), c.clone());
    let s = pleth_sym_series(&arg).unwrap();
    assert_eq!(s.coeff(&Monomial::var(0)), c);
}
