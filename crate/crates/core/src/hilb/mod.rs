//! The localization series `F(z, m1, m2, m3, y)(t1, t2)` over Hilbert schemes
//! of points on the plane, and its symmetry and denominator checks.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rat, Coef, Grading, LaurentPoly, Monomial, RationalFunction, Subst, TruncatedSeries, VarTable};
use crate::characters::{pleth_sym_series, Character};
use crate::par::map_reduce;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::report::Report;
use crate::Result;

pub const T1: usize = 0;
pub const T2: usize = 1;
pub const Z: usize = 3;
pub const Y: usize = 4;
pub const M1: usize = 5;
pub const M2: usize = 6;
pub const M3: usize = 7;

pub type Series = TruncatedSeries<RationalFunction>;

pub fn hilb_vars() -> VarTable {
    VarTable::new(&[
        ("t1", false),
        ("t2", false),
        ("t3", false),
        ("z", true),
        ("y", true),
        ("m1", false),
        ("m2", false),
        ("m3", false),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FContext {
    pub nz: u32,
    pub ny: u32,
    /// Which of m1, m2, m3 stay symbolic; the others are set to 0.
    pub symbolic: [bool; 3],
}

impl FContext {
    pub fn new(nz: u32, ny: u32) -> Self {
        FContext { nz, ny, symbolic: [true; 3] }
    }

    pub fn gradings(&self) -> Vec<Grading> {
        alloc::vec![Grading::degree(&[Z], self.nz as i64), Grading::degree(&[Y], self.ny as i64)]
    }
}

fn t(b1: i64, b2: i64) -> Monomial {
    Monomial::from_exps(&[(T1, b1 as i32), (T2, b2 as i32)])
}

/// Tangent weights at the fixed point `I_λ`.
pub fn tangent_char_hilb(lambda: &Partition2D) -> Character {
    let mut p = LaurentPoly::zero();
    for (_, (a, l)) in lambda.arms_legs() {
        p.add_term(t(-l, a + 1), rat(1));
        p.add_term(t(l + 1, -a), rat(1));
    }
    Character::new(p).expect("integer multiplicities")
}

/// Fiber of `O(l)^{[n]}` at `I_λ`.
pub fn taut_character(lambda: &Partition2D, l: Monomial) -> LaurentPoly {
    LaurentPoly::from_terms(lambda.boxes().map(|(b1, b2)| (l * t(-(b1 as i64), -(b2 as i64)), rat(1))))
}

/// `1 / Λ•(T_λ^∨) = 1 / ∏ (1 - x^{-1})`.
pub fn inverse_euler(lambda: &Partition2D) -> RationalFunction {
    let ws: Vec<Monomial> = tangent_char_hilb(lambda).weights().flat_map(|(w, c)| (0..c).map(move |_| w.inv())).collect();
    RationalFunction::from_parts(LaurentPoly::one(), &ws).expect("tangent weights are nontrivial")
}

fn summand(lambda: &Partition2D, ctx: &FContext) -> Result<Series> {
    let g = ctx.gradings();
    let mvar = |i: usize, v: usize, w: Monomial| -> LaurentPoly {
        if ctx.symbolic[i] {
            LaurentPoly::one_minus(Monomial::var(v) * w)
        } else {
            LaurentPoly::one()
        }
    };
    let mut num = LaurentPoly::one();
    let mut yser = Series::one(&g);
    for (b1, b2) in lambda.boxes() {
        let w = t(b1 as i64, b2 as i64);
        num = &(&num * &mvar(0, M1, w)) * &mvar(1, M2, w);
        // (1 - m3 y w^-1) / (y - w), with 1/(y - w) = -w^-1 Σ (y/w)^k
        let mut m3 = alloc::vec![(Monomial::ONE, RationalFunction::one())];
        if ctx.symbolic[2] {
            m3.push((Monomial::var(Y), RationalFunction::monomial(Monomial::var(M3) * w.inv()).neg()));
        }
        let geo = (0..=ctx.ny as i32).map(|k| (Monomial::var(Y).pow(k), RationalFunction::monomial(w.inv().pow(k + 1)).neg()));
        yser = yser.mul(&Series::from_terms(&g, m3)).mul(&Series::from_terms(&g, geo));
    }
    let coef = inverse_euler(lambda).mul_poly(&num);
    Ok(yser.scale(&coef).shift(Monomial::var(Z).pow(lambda.size() as i32)).truncated(&g))
}

/// `Σ_λ z^{|λ|} / Λ•(T_λ^∨) ∏_□ (1 - m1 w)(1 - m2 w)(1 - m3 y w^{-1}) / (y - w)`
/// with `w = t1^{b1} t2^{b2}`, expanded in positive powers of `y`.
pub fn compute_f(ctx: &FContext) -> Result<Series> {
    let g = ctx.gradings();
    let parts = partitions_up_to(ctx.nz);
    let zero = Ok(Series::zero(&g).truncated(&g));
    map_reduce(parts, zero, |l| summand(&l, ctx), |a, b| Ok(a?.add(&b?)))
}

/// Compares two series on their common truncation region.
pub fn compare(name: &str, a: &Series, b: &Series) -> Report {
    let mut r = Report::new(name);
    r.checked = a.len().max(b.len());
    if let Some((m, x, y)) = a.first_difference(b) {
        let v = hilb_vars();
        r.fail(m.fmt_with(&v), x.fmt_with(&v), y.fmt_with(&v));
    }
    r
}

/// The plethystic side `Sym(-z (1-m1)(1-m2) / ((1-t1^-1)(1-t2^-1)))`.
pub fn denominator_closed_form(nz: u32) -> Result<Series> {
    let g = FContext::new(nz, 0).gradings();
    let num = -(LaurentPoly::one_minus(Monomial::var(M1)).mul_one_minus(Monomial::var(M2)));
    let c = RationalFunction::from_parts(num, &[t(-1, 0), t(0, -1)])?;
    pleth_sym_series(&Series::term(&g, Monomial::var(Z), c))
}

/// Checks `F(z, m1, m2, m3, 0)` against a given localization-side series.
pub fn denominator_report(f0: &Series, nz: u32) -> Result<Report> {
    let rhs = denominator_closed_form(nz)?;
    Ok(compare(&format!("denominator to z^{}", nz), f0, &rhs))
}

pub fn verify_denominator(nz: u32) -> Result<Report> {
    let f0 = compute_f(&FContext::new(nz, 0))?;
    denominator_report(&f0, nz)
}

fn normalize(f: &Series) -> Result<Series> {
    let f0 = f.filter(|m| m.get(Y) == 0);
    Ok(f.mul(&f0.inv()?))
}

/// The three normalized series related by the three-fold symmetry, in order: as given,
/// with m2 and m3 exchanged, and with z and y exchanged.
pub fn symmetry_sides(nz: u32, ny: u32) -> Result<[Series; 3]> {
    let fa = compute_f(&FContext::new(nz, ny))?;
    let n1 = normalize(&fa)?;
    let n2 = n1.swap_vars(M2, M3)?;
    let fb = if nz == ny { fa } else { compute_f(&FContext::new(ny, nz))? };
    let target = FContext::new(nz, ny).gradings();
    let g = fb.swap_vars(Z, Y)?.align_gradings(&target);
    let n3 = g.mul(&g.filter(|m| m.get(Z) == 0).inv()?);
    Ok([n1.truncated(&target), n2.truncated(&target), n3.truncated(&target)])
}

/// m1-degree of each `z^n` coefficient numerator must be at most n.
pub fn m1_degree_report(s: &Series) -> Report {
    let mut r = Report::new("m1-degree bound");
    for (m, c) in s.terms() {
        r.checked += 1;
        let n = m.get(Z) / 2;
        let c = c.clone().cancel();
        let deg = c.numerator().degree_range(M1).map_or(0, |(_, hi)| hi / 2);
        if deg > n {
            let v = hilb_vars();
            r.fail(m.fmt_with(&v), format!("m1-degree {}", deg), format!("at most {}", n));
        }
    }
    r
}

pub fn verify_symmetry(nz: u32, ny: u32) -> Result<Report> {
    let [n1, n2, n3] = symmetry_sides(nz, ny)?;
    let mut r = Report::new(&format!("symmetry to z^{} y^{}", nz, ny));
    r.absorb(compare("m2<->m3", &n1, &n2));
    r.absorb(compare("z<->y", &n1, &n3));
    r.absorb(m1_degree_report(&n3));
    Ok(r)
}

/// `m_i -> 0` on a series, used by degenerate checks.
pub fn drop_m(s: &Series, which: &[usize]) -> Result<Series> {
    let mut sub = Subst::new();
    for &v in which {
        sub = sub.zero(v);
    }
    s.map_coeffs(|c| c.substitute(&sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_examples() {
        assert_eq!(tangent_char_hilb(&Partition2D::of(&[1])).poly(), &LaurentPoly::from_terms([(t(1, 0), rat(1)), (t(0, 1), rat(1))]));
        let want = LaurentPoly::from_terms([(t(0, 2), rat(1)), (t(1, -1), rat(1)), (t(0, 1), rat(1)), (t(1, 0), rat(1))]);
        assert_eq!(tangent_char_hilb(&Partition2D::of(&[2])).poly(), &want);
        assert!(tangent_char_hilb(&Partition2D::empty()).is_zero());
    }

    #[test]
    fn taut_examples() {
        let m = Monomial::var(M1);
        assert_eq!(taut_character(&Partition2D::of(&[1]), Monomial::ONE), LaurentPoly::one());
        let want = LaurentPoly::from_terms([(m, rat(1)), (m * t(0, -1), rat(1)), (m * t(-1, 0), rat(1))]);
        assert_eq!(taut_character(&Partition2D::of(&[2, 1]), m), want);
        assert!(taut_character(&Partition2D::empty(), m).is_zero());
    }

    #[test]
    fn low_coefficients() {
        let f = compute_f(&FContext::new(1, 1)).unwrap();
        assert_eq!(f.coeff(&Monomial::ONE), RationalFunction::one());
        let num = -(LaurentPoly::one_minus(Monomial::var(M1)).mul_one_minus(Monomial::var(M2)));
        let want = RationalFunction::from_parts(num, &[t(-1, 0), t(0, -1)]).unwrap();
        assert_eq!(f.coeff(&Monomial::var(Z)), want);
        // z y with m3 = 0: single box w = 1, 1/(y-1) = -(1 + y + …)
        let ctx = FContext { nz: 1, ny: 1, symbolic: [true, true, false] };
        let f = compute_f(&ctx).unwrap();
        let zy = Monomial::var(Z) * Monomial::var(Y);
        let num = -(LaurentPoly::one_minus(Monomial::var(M1)).mul_one_minus(Monomial::var(M2)));
        let want = RationalFunction::from_parts(num, &[t(-1, 0), t(0, -1)]).unwrap();
        assert_eq!(f.coeff(&zy), want);
    }

    #[test]
    fn denominator_low_order() {
        assert!(verify_denominator(1).unwrap().passed);
        assert!(verify_denominator(3).unwrap().passed);
    }

    #[test]
    fn corrupted_denominator_fails() {
        let f0 = compute_f(&FContext::new(2, 0)).unwrap();
        let key = Monomial::var(Z).pow(2);
        let bad = f0.add(&Series::term(f0.gradings(), key, f0.coeff(&key).scale(&rat(-2))));
        let r = denominator_report(&bad, 2).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn symmetry_low_order() {
        let r = verify_symmetry(2, 2).unwrap();
        assert!(r.passed, "{}", r);
        let [n1, _, _] = symmetry_sides(1, 1).unwrap();
        // the y^0 row is 1 after normalization
        for (m, c) in n1.terms() {
            if m.get(Y) == 0 {
                assert!(m.is_one() && *c == RationalFunction::one());
            }
        }
    }
}
