use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::algebra::{rat, Coef, Grading, LaurentPoly, Monomial, Rational, RationalFunction, TruncatedSeries};
use crate::partitions::partitions_of;
use crate::report::Report;
use crate::{Error, Result};

/// `Sym•(Σ u_i - Σ v_j) = ∏ (1 - v_j) / ∏ (1 - u_i)` for a finite virtual
/// character with integer multiplicities.
pub fn pleth_sym_finite(v: &LaurentPoly) -> Result<RationalFunction> {
    let mut num = LaurentPoly::one();
    let mut den: Vec<Monomial> = Vec::new();
    for (w, c) in v.terms() {
        if !c.is_integer() {
            return Err(Error::Domain(alloc::string::String::from("non-integer multiplicity")));
        }
        let k = i64::try_from(&c.to_integer()).expect("multiplicity fits in i64");
        if k > 0 {
            if w.is_one() {
                return Err(Error::DegenerateFactor);
            }
            for _ in 0..k {
                den.push(*w);
            }
        } else {
            for _ in 0..(-k) {
                num = num.mul_one_minus(*w);
            }
        }
    }
    if num.is_zero() {
        return Ok(RationalFunction::zero());
    }
    Ok(RationalFunction::from_parts(num, &den)?.cancel())
}

/// `exp(Σ_{n≥1} ψⁿ(arg)/n)`.
pub fn pleth_sym_series<C: Coef>(arg: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    arg.pleth_exp()
}

/// `Sym•(z/(1-t))` expanded in positive powers of `t`: the `z^j t^k`
/// coefficient counts partitions of `k` with at most `j` parts, for
/// `j, k ≤ n`. Counts come from direct enumeration.
pub fn verify_partition_counts(n: u32) -> Result<Report> {
    // z = var 0, t = var 1
    let g = alloc::vec![Grading::degree(&[0], n as i64), Grading::degree(&[1], n as i64)];
    let arg = TruncatedSeries::<Rational>::from_terms(&g, (0..=n as i32).map(|k| (Monomial::from_exps(&[(0, 1), (1, k)]), rat(1))));
    let s = pleth_sym_series(&arg)?;
    let mut r = Report::new(&format!("plethystic partition counts, j, k ≤ {}", n));
    for j in 0..=n {
        for k in 0..=n {
            r.checked += 1;
            let want = partitions_of(k).iter().filter(|p| p.length() as u32 <= j).count() as i64;
            let got = s.coeff(&Monomial::from_exps(&[(0, j as i32), (1, k as i32)]));
            if got != rat(want) {
                r.fail(format!("z^{} t^{}", j, k), got.to_string(), want.to_string());
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Grading};

    fn x(a: i32, b: i32) -> Monomial {
        Monomial::from_exps(&[(0, a), (1, b)])
    }

    #[test]
    fn finite_examples() {
        let v = LaurentPoly::from_terms([(x(1, 0), rat(2)), (x(1, -3), rat(-1))]);
        let want = RationalFunction::from_parts(LaurentPoly::one_minus(x(1, -3)), &[x(1, 0), x(1, 0)]).unwrap();
        assert_eq!(pleth_sym_finite(&v).unwrap(), want);
        let v = LaurentPoly::from_terms([(x(1, 0), rat(3)), (Monomial::ONE, rat(-1))]);
        assert!(pleth_sym_finite(&v).unwrap().is_zero());
        assert_eq!(pleth_sym_finite(&LaurentPoly::zero()).unwrap(), RationalFunction::one());
        assert!(pleth_sym_finite(&LaurentPoly::one()).is_err());
    }

    #[test]
    fn series_of_z_over_one_minus_t() {
        // coefficients are rational functions in t (var 1); z is var 0
        let g = alloc::vec![Grading::degree(&[0], 3)];
        let c = RationalFunction::inv_one_minus(x(0, 1)).unwrap();
        let arg = TruncatedSeries::term(&g, x(1, 0), c);
        let s = pleth_sym_series(&arg).unwrap();
        for j in 0..=3 {
            let ws: Vec<Monomial> = (1..=j).map(|i| x(0, i)).collect();
            let want = RationalFunction::from_parts(LaurentPoly::one(), &ws).unwrap();
            assert_eq!(s.coeff(&x(j, 0)), want, "z^{}", j);
        }
        assert_eq!(s.len(), 4);
        let zero = TruncatedSeries::<RationalFunction>::zero(&g).truncated(&g);
        assert_eq!(pleth_sym_series(&zero).unwrap().coeff(&Monomial::ONE), RationalFunction::one());
    }

    #[test]
    fn constant_term_rejected() {
        let g = alloc::vec![Grading::degree(&[0], 3)];
        let arg = TruncatedSeries::<crate::algebra::Rational>::one(&g);
        assert!(pleth_sym_series(&arg).is_err());
    }
}
