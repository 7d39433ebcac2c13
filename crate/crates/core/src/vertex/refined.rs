use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, Monomial, VarTable, EXACT};
use crate::characters::SlopeRegime;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::{Error, Result};

use super::schur::{skew_schur, Series, SpecializedAlphabet};

/// Variable slots of `t` and `q` in vertex series.
pub const VT: usize = 0;
pub const VQ: usize = 1;

pub fn tq_vars() -> VarTable {
    VarTable::new(&[("t", false), ("q", false)])
}

/// Total `(t, q)` degree at most `order` (equivalently `Q`-degree).
pub fn tq_template(order: i64) -> Vec<Grading> {
    alloc::vec![Grading::degree(&[VT, VQ], order)]
}

fn raised(template: &[Grading], slack: i64) -> Vec<Grading> {
    template
        .iter()
        .map(|g| {
            let mut g = g.clone();
            if g.bound < EXACT {
                g.bound += slack;
            }
            g
        })
        .collect()
}

/// Runs `f` on templates with growing headroom until the result is certified
/// to the bounds of `template`.
pub(crate) fn with_headroom<F: Fn(&[Grading]) -> Result<Series>>(template: &[Grading], start: i64, f: F) -> Result<Series> {
    let mut slack = start.max(0);
    for _ in 0..12 {
        let s = f(&raised(template, slack))?;
        let ok = template.iter().enumerate().all(|(i, g)| s.bound(i) >= g.bound);
        if ok {
            return Ok(s.truncated(template));
        }
        slack = 2 * slack + 4;
    }
    Err(Error::Invariant(format!("precision not reached with headroom {}", slack)))
}

fn contains(outer: &Partition2D, inner: &Partition2D) -> bool {
    inner.length() <= outer.length() && (1..=inner.length()).all(|i| inner.part(i) <= outer.part(i))
}

/// `C(λ, μ, ν)` evaluated at `(x_a, x_b)`: pass `(VT, VQ)` for `C(…)(t, q)` and
/// `(VQ, VT)` for `C(…)(q, t)`.
pub fn refined_vertex(
    lambda: &Partition2D,
    mu: &Partition2D,
    nu: &Partition2D,
    vars: (usize, usize),
    template: &[Grading],
) -> Result<Series> {
    let (t, q) = vars;
    let lt = lambda.conjugate();
    let mt = mu.conjugate();
    let nt = nu.conjugate();
    // the prefactor and the shifted letters can sit below degree zero
    let dip = (lt.norm2() + mu.norm2() + 2 * (nu.size() + 1) * (lambda.size() + mu.size())) as i64;
    with_headroom(template, dip, |tm| {
        let pref = Monomial::doubled(&[(t, -(lt.norm2() as i32)), (q, -(mu.norm2() as i32))]);
        let a1 = SpecializedAlphabet::new(t, q, nt.clone());
        let a2 = SpecializedAlphabet::new(q, t, nu.clone());
        let mut sum = Series::zero(tm);
        for eta in partitions_up_to(lambda.size().min(mt.size()) as u32) {
            if !contains(lambda, &eta) || !contains(&mt, &eta) {
                continue;
            }
            let e = eta.size() as i32;
            let s1 = skew_schur(lambda, &eta, &a1, tm)?;
            let s2 = skew_schur(&mt, &eta, &a2, tm)?;
            sum = sum.add(&s1.mul(&s2).shift(Monomial::doubled(&[(q, e), (t, -e)])));
        }
        let mut acc = sum.shift(pref);
        for (_, (a, l)) in nu.arms_legs() {
            let w = Monomial::from_exps(&[(q, l as i32), (t, a as i32 + 1)]);
            acc = acc.mul(&Series::geometric(tm, rat(1), w)?);
        }
        Ok(acc)
    })
}

/// Normalized vertex limit `V̂'(λ, μ, ν)^σ` for a preferred regime, from the
/// table on regimes with tertiary axis 3 and cyclic relabelling otherwise.
pub fn vertex_limit(
    lambda: &Partition2D,
    mu: &Partition2D,
    nu: &Partition2D,
    sigma: &SlopeRegime,
    template: &[Grading],
) -> Result<Series> {
    let (mut legs, mut s) = ([lambda.clone(), mu.clone(), nu.clone()], *sigma);
    for _ in 0..3 {
        if let SlopeRegime::Preferred { tertiary: 2, .. } = s {
            break;
        }
        // coordinates (p1, p2, p3) -> (p3, p1, p2): legs (λ, μ, ν) -> (ν, λ, μ)
        legs = [legs[2].clone(), legs[0].clone(), legs[1].clone()];
        s = s.permute([1, 2, 0]);
    }
    let [l, m, n] = legs;
    match s {
        SlopeRegime::Preferred { primary: 0, tertiary: 2, tertiary_sign: 1, .. } => refined_vertex(&l, &m, &n, (VT, VQ), template),
        SlopeRegime::Preferred { primary: 0, tertiary: 2, .. } => {
            refined_vertex(&m.conjugate(), &l.conjugate(), &n.conjugate(), (VQ, VT), template)
        }
        SlopeRegime::Preferred { primary: 1, tertiary: 2, tertiary_sign: 1, .. } => {
            refined_vertex(&m.conjugate(), &l.conjugate(), &n.conjugate(), (VT, VQ), template)
        }
        SlopeRegime::Preferred { primary: 1, tertiary: 2, .. } => refined_vertex(&l, &m, &n, (VQ, VT), template),
        _ => Err(Error::Table(format!("vertex limit needs a preferred regime, got {}", sigma))),
    }
}

/// `1/∏_{i,j≥0}(1 - q^i t^{j+1})`.
pub fn empty_vertex_series(template: &[Grading]) -> Result<Series> {
    let order = template
        .iter()
        .filter(|g| g.bound < EXACT && g.weights[VT] > 0)
        .map(|g| g.bound / (2 * g.weights[VT]))
        .min()
        .ok_or_else(|| Error::Direction(alloc::string::String::from("no grading bounds t")))?;
    let mut acc = Series::one(template);
    for i in 0..=order {
        for j in 0..=order {
            let w = Monomial::from_exps(&[(VQ, i as i32), (VT, j as i32 + 1)]);
            if template.iter().any(|g| g.bound < EXACT && g.grade(&w) > g.bound) {
                continue;
            }
            acc = acc.mul(&Series::geometric(template, rat(1), w)?);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[u32]) -> Partition2D {
        Partition2D::of(s)
    }

    #[test]
    fn empty_legs_give_one() {
        let g = tq_template(4);
        let c = refined_vertex(&p(&[]), &p(&[]), &p(&[]), (VT, VQ), &g).unwrap();
        assert_eq!(c, Series::one(&g).truncated(&g));
    }

    #[test]
    fn single_box_is_geometric() {
        let g = tq_template(5);
        let c = refined_vertex(&p(&[1]), &p(&[]), &p(&[]), (VT, VQ), &g).unwrap();
        let want = Series::geometric(&g, rat(1), Monomial::var(VT)).unwrap();
        assert_eq!(c.first_difference(&want), None);
        assert!(c.bound(0) >= 10);
    }

    #[test]
    fn swapped_variables_swap_the_series() {
        let g = tq_template(3);
        let (l, m, n) = (p(&[1]), p(&[2]), p(&[1]));
        let a = refined_vertex(&l, &m, &n, (VT, VQ), &g).unwrap();
        let b = refined_vertex(&l, &m, &n, (VQ, VT), &g).unwrap();
        assert_eq!(a.swap_vars(VT, VQ).unwrap().first_difference(&b), None);
    }

    #[test]
    fn untabulated_regime_is_an_error() {
        let s = SlopeRegime::explicit([1, 1, -2]).unwrap();
        assert!(matches!(vertex_limit(&p(&[]), &p(&[]), &p(&[]), &s, &tq_template(2)), Err(Error::Table(_))));
    }
}
