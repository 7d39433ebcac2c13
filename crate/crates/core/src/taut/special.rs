use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_integer::Integer;

use crate::algebra::{rat, Monomial, Rational, RationalFunction};
use crate::par::map_reduce;
use crate::{Error, Result};

use super::surface::ToricSurfaceData;
use super::{RatSeries, Series, S, T1, T2};

/// The first `n` coprime pairs `(a, b)`, `a, b > 0`, ordered by `a + b` then
/// `a`, under which no weight in `weights` becomes `s^0`.
pub fn generic_pairs<'a, I: IntoIterator<Item = &'a Monomial>>(weights: I, n: usize) -> Vec<(i32, i32)> {
    let ws: Vec<(i32, i32)> = weights.into_iter().map(|w| (w.get(T1) / 2, w.get(T2) / 2)).collect();
    let mut out = Vec::new();
    let mut sum = 2;
    while out.len() < n {
        for a in 1..sum {
            let b = sum - a;
            if a.gcd(&b) == 1 && ws.iter().all(|&(x, y)| a * x + b * y != 0) {
                out.push((a, b));
                if out.len() == n {
                    break;
                }
            }
        }
        sum += 1;
    }
    out
}

/// `t1 = s^a, t2 = s^b`.
pub fn to_s(f: &RationalFunction, (a, b): (i32, i32)) -> Result<RationalFunction> {
    f.map_monomials(|m| {
        let mut out = *m;
        out.0[S] += a * m.0[T1] + b * m.0[T2];
        out.0[T1] = 0;
        out.0[T2] = 0;
        out
    })
}

/// `e (e-1) ... (e-j+1)`.
fn falling(e: i64, j: i64) -> Rational {
    (0..j).fold(rat(1), |acc, i| acc * rat(e - i))
}

/// Value at `s = 1` of `N(s) / ∏ (1 - s^{k_i})`: the numerator must vanish
/// to the order of the denominator, and then the value is
/// `N^{(D)}(1) / (D! (-1)^D ∏ k_i)`.
pub fn value_at_one(f: &RationalFunction) -> Result<Rational> {
    let mut d = 0i64;
    let mut cof = rat(1);
    for (w, &e) in f.denominator().iter() {
        if w.0.iter().enumerate().any(|(i, &x)| i != S && x != 0) {
            return Err(Error::Domain(format!("denominator weight {:?} is not a power of s", w.0)));
        }
        let k = w.get(S) as i64;
        if k % 2 != 0 {
            return Err(Error::Lattice(String::from("half-integral power of s")));
        }
        d += e as i64;
        for _ in 0..e {
            cof *= rat(k / 2);
        }
    }
    let mut terms = Vec::new();
    for (m, c) in f.numerator().terms() {
        if m.0.iter().enumerate().any(|(i, &x)| i != S && x != 0) || m.get(S) % 2 != 0 {
            return Err(Error::Domain(format!("numerator monomial {:?} is not an integral power of s", m.0)));
        }
        terms.push((m.get(S) as i64 / 2, c.clone()));
    }
    let derivative = |j: i64| terms.iter().fold(rat(0), |acc, (e, c)| acc + c.clone() * falling(*e, j));
    for j in 0..d {
        if derivative(j) != rat(0) {
            return Err(Error::Pole(format!("residual pole of order {} at s = 1", d - j)));
        }
    }
    let fact = (1..=d).fold(rat(1), |acc, i| acc * rat(i));
    let sign = if d % 2 == 0 { rat(1) } else { rat(-1) };
    Ok(derivative(d) / (fact * sign * cof))
}

fn weights_of(s: &Series) -> Vec<Monomial> {
    let mut ws: Vec<Monomial> = s.terms().flat_map(|(_, c)| c.denominator().keys().copied().collect::<Vec<_>>()).collect();
    ws.sort();
    ws.dedup();
    ws
}

fn evaluate(s: &Series, pair: (i32, i32)) -> Result<RatSeries> {
    let mut terms = BTreeMap::new();
    for (m, c) in s.terms() {
        terms.insert(*m, value_at_one(&to_s(c, pair)?)?);
    }
    Ok(RatSeries::from_terms(s.gradings(), terms))
}

fn agree(a: RatSeries, b: &RatSeries) -> Result<RatSeries> {
    if let Some((m, x, y)) = a.first_difference(b) {
        return Err(Error::Invariant(format!("specialization depends on the exponents at {:?}: {} vs {}", m.0, x, y)));
    }
    Ok(a)
}

/// `t1 = t2 = 1` for a series whose coefficients are regular there, through
/// two different generic pairs that must agree.
pub fn specialize_nonequivariant(s: &Series) -> Result<RatSeries> {
    let pairs = generic_pairs(weights_of(s).iter(), 2);
    agree(evaluate(s, pairs[0])?, &evaluate(s, pairs[1])?)
}

/// Nonequivariant product over fixed points of `local`. The substitution
/// `t_i = s^{a_i}` happens before the product, so the arithmetic is in one
/// variable.
pub fn surface_nonequivariant<F>(x: &ToricSurfaceData, local: F) -> Result<RatSeries>
where
    F: Fn(&super::FixedPoint) -> Result<Series> + Sync + Send,
{
    let locals = x.fixed.iter().map(&local).collect::<Result<Vec<Series>>>()?;
    let mut ws: Vec<Monomial> = locals.iter().flat_map(weights_of).collect();
    ws.sort();
    ws.dedup();
    let pairs = generic_pairs(ws.iter(), 2);
    let mut results = Vec::new();
    for p in pairs {
        let mapped = locals.iter().map(|s| s.map_coeffs(|c| to_s(c, p))).collect::<Result<Vec<Series>>>()?;
        let t = mapped[0].gradings().to_vec();
        let one = Ok(Series::one(&t).truncated(&t));
        let prod = map_reduce(mapped, one, Ok, |a, b| Ok(a?.mul(&b?)))?;
        results.push(evaluate_s(&prod)?);
    }
    agree(results.swap_remove(0), &results[0])
}

/// Coefficients already in `s`.
fn evaluate_s(s: &Series) -> Result<RatSeries> {
    let mut terms = BTreeMap::new();
    for (m, c) in s.terms() {
        terms.insert(*m, value_at_one(c)?);
    }
    Ok(RatSeries::from_terms(s.gradings(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LaurentPoly;

    #[test]
    fn value_of_a_removable_singularity() {
        // (1 - s^2)/(1 - s) = 1 + s -> 2
        let f = RationalFunction::from_parts(LaurentPoly::one_minus(Monomial::var(S).pow(2)), &[Monomial::var(S)]).unwrap();
        assert_eq!(value_at_one(&f).unwrap(), rat(2));
        // s^{-1}/(1 - s^{-1}) = 1/(s - 1), so the sum vanishes
        let g = &RationalFunction::from_parts(LaurentPoly::monomial(Monomial::var(S).inv()), &[Monomial::var(S).inv()]).unwrap()
            + &RationalFunction::inv_one_minus(Monomial::var(S)).unwrap();
        assert_eq!(value_at_one(&g).unwrap(), rat(0));
    }

    #[test]
    fn a_genuine_pole_is_reported() {
        let f = RationalFunction::inv_one_minus(Monomial::var(S)).unwrap();
        assert!(matches!(value_at_one(&f), Err(Error::Pole(_))));
    }

    #[test]
    fn constants_pass_through() {
        assert_eq!(value_at_one(&RationalFunction::constant(rat(7))).unwrap(), rat(7));
    }

    #[test]
    fn pairs_avoid_annihilated_weights() {
        let w = [Monomial::from_exps(&[(T1, 1), (T2, -1)]), Monomial::from_exps(&[(T1, 2), (T2, -1)])];
        let p = generic_pairs(w.iter(), 2);
        assert_eq!(p, alloc::vec![(2, 1), (1, 3)]);
    }
}
