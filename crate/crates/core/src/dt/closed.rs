use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, LaurentPoly, Monomial, Rational, RationalFunction, TruncatedSeries, EXACT};
use crate::characters::SlopeRegime;
use crate::par;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::vertex::{Series, SpecializedAlphabet};
use crate::{Error, Result};

use super::vars::{expanded_template, M1, M2, M3, M4, U, V, VQ, VT};

/// Series in the Kähler variables with coefficients rational in `t, q`.
pub type RSeries = TruncatedSeries<RationalFunction>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    X1,
    X2,
}

/// The two chambers compared by slope independence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `r3 ≫ r2 > 0 ≫ r1`: sums over the horizontal partitions.
    A,
    /// `r2 ≫ 0 > r1 ≫ r3`: sums over the vertical partitions.
    B,
}

impl Regime {
    pub fn slope(&self) -> SlopeRegime {
        match self {
            Regime::A => SlopeRegime::preferred(2, 1, 1, 1).expect("valid regime"),
            Regime::B => SlopeRegime::preferred(1, 1, 0, -1).expect("valid regime"),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Regime::A => "r3>>r2>0>>r1",
            Regime::B => "r2>>0>r1>>r3",
        }
    }
}

/// `Σ_i letter_i` in closed form: `b^{1/2}/(1 - b)` plus the finitely many
/// letters moved by the shift.
pub fn power_sum(a: &SpecializedAlphabet) -> Result<RationalFunction> {
    let b = Monomial::var(a.base);
    let head = RationalFunction::from_parts(LaurentPoly::monomial(Monomial::doubled(&[(a.base, 1)])), &[b])?;
    let mut corr = LaurentPoly::zero();
    for i in 0..a.shift.length() {
        corr.add_term(a.letter(i), rat(1));
        corr.add_term(Monomial::doubled(&[(a.base, 2 * i as i32 + 1)]), rat(-1));
    }
    Ok(&head + &RationalFunction::from_poly(corr))
}

/// `∏_{i,j} (1 + sign·K·scale·x_i y_j)`, or its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curly {
    pub kahler: Monomial,
    pub sign: i8,
    pub scale: Monomial,
    pub x: SpecializedAlphabet,
    pub y: SpecializedAlphabet,
    pub inverted: bool,
}

impl Curly {
    /// Character `scale · p(x) · p(y)` of the weights in the product.
    pub fn character(&self) -> Result<RationalFunction> {
        Ok((&power_sum(&self.x)? * &power_sum(&self.y)?).mul_monomial(self.scale))
    }

    pub fn log(&self, template: &[Grading]) -> Result<RSeries> {
        let l = curly_log(template, self.kahler, self.sign, &self.character()?)?;
        Ok(if self.inverted { l.neg() } else { l })
    }
}

/// `log ∏_w (1 + sign·K·w)` over the weights `w` of `chi`, i.e.
/// `Σ_n (-1)^{n+1} sign^n K^n ψ_n(chi) / n`.
pub fn curly_log(template: &[Grading], k: Monomial, sign: i8, chi: &RationalFunction) -> Result<RSeries> {
    let bounded: Vec<&Grading> = template.iter().filter(|g| g.bound < EXACT).collect();
    if !bounded.iter().any(|g| g.grade(&k) > 0) || template.iter().any(|g| g.grade(&k) < 0) {
        return Err(Error::Direction(String::from("Kähler weight is not cut off by the template")));
    }
    let mut acc = RSeries::zero(template).truncated(template);
    let mut n = 1;
    loop {
        let kn = k.pow(n);
        if bounded.iter().any(|g| g.grade(&kn) > g.bound) {
            break;
        }
        // (-1)^{n+1} sign^n = -(-sign)^n
        let odd = n % 2 == 1;
        let neg = if sign < 0 { true } else { !odd };
        let c = if neg { rat(-1) } else { rat(1) } / rat(n as i64);
        acc = acc.add(&RSeries::term(template, kn, chi.psi(n).scale(&c)));
        n += 1;
    }
    Ok(acc)
}

/// Boxes of `λ` as the finite part of `{q^{-ρ} t^{-λ}, t^{-ρ}}`:
/// `Σ_□ q^{b1+1/2} t^{-b2-1/2}`.
pub fn btop_boxes(lambda: &Partition2D) -> LaurentPoly {
    LaurentPoly::from_terms(
        lambda
            .boxes()
            .map(|(b1, b2)| (Monomial::doubled(&[(VQ, 2 * b1 as i32 + 1), (VT, -2 * b2 as i32 - 1)]), rat(1))),
    )
}

/// One term of a closed form: `weight · coef · ∏ factors`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSummand {
    pub label: String,
    pub weight: Monomial,
    pub coef: RationalFunction,
    pub factors: Vec<Curly>,
}

fn hooks(l: &Partition2D, x: usize, y: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for (_, (a, lg)) in l.arms_legs() {
        out.push(Monomial::from_exps(&[(x, lg as i32), (y, a as i32 + 1)]));
        out.push(Monomial::from_exps(&[(x, lg as i32 + 1), (y, a as i32)]));
    }
    out
}

fn al(base: usize, other: usize, shift: &Partition2D) -> SpecializedAlphabet {
    SpecializedAlphabet::new(base, other, shift.clone())
}

fn rho(base: usize) -> SpecializedAlphabet {
    SpecializedAlphabet::rho(base)
}

fn var(i: usize) -> Monomial {
    Monomial::var(i)
}

fn sq_tq() -> Monomial {
    Monomial::doubled(&[(VT, 1), (VQ, -1)])
}

fn num(k: Monomial, x: SpecializedAlphabet, y: SpecializedAlphabet) -> Curly {
    Curly { kahler: k, sign: 1, scale: Monomial::ONE, x, y, inverted: false }
}

fn den(k: Monomial, scale: Monomial, x: SpecializedAlphabet, y: SpecializedAlphabet) -> Curly {
    Curly { kahler: k, sign: -1, scale, x, y, inverted: true }
}

/// Largest power of `var` any term within `template` can carry.
pub fn max_degree(template: &[Grading], v: usize) -> Result<u32> {
    template
        .iter()
        .filter(|g| g.bound < EXACT && g.weights[v] > 0)
        .map(|g| (g.bound / (2 * g.weights[v])) as u32)
        .min()
        .ok_or_else(|| Error::Direction(String::from("variable not bounded by the template")))
}

fn pairs(n: u32) -> Vec<(Partition2D, Partition2D)> {
    let ps = partitions_up_to(n);
    let mut out = Vec::new();
    for a in ps.iter() {
        for b in ps.iter().filter(|b| a.size() + b.size() <= n as u64) {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn x1_a(m1: &Partition2D, m2: &Partition2D) -> Result<ClosedSummand> {
    let (m1t, m2t) = (m1.conjugate(), m2.conjugate());
    let mut ws = hooks(m1, VT, VQ);
    ws.extend(hooks(m2, VQ, VT));
    let pref = Monomial::from_exps(&[(VQ, m1.norm2() as i32), (VT, m2.norm2() as i32)]);
    let factors = alloc::vec![
        num(var(M1), al(VT, VQ, m1), rho(VQ)),
        num(var(M2), al(VQ, VT, m2), rho(VT)),
        num(var(M3), al(VQ, VT, m2), rho(VT)),
        num(var(M4), al(VT, VQ, m1), rho(VQ)),
        num(var(M1) * var(U), al(VT, VQ, &m2t), rho(VQ)),
        num(var(M2) * var(U), al(VQ, VT, &m1t), rho(VT)),
        num(var(M3) * var(U), al(VQ, VT, &m1t), rho(VT)),
        num(var(M4) * var(U), al(VT, VQ, &m2t), rho(VQ)),
        den(var(U), sq_tq(), al(VQ, VT, &m1t), al(VT, VQ, &m2t)),
        den(var(U), sq_tq().inv(), al(VT, VQ, &m2t), al(VQ, VT, &m1t)),
        den(var(U) * var(M1) * var(M2), sq_tq().inv(), rho(VT), rho(VQ)),
        den(var(U) * var(M3) * var(M4), sq_tq(), rho(VQ), rho(VT)),
    ];
    Ok(ClosedSummand {
        label: alloc::format!("mu1={} mu2={}", m1, m2),
        weight: var(V).pow((m1.size() + m2.size()) as i32),
        coef: RationalFunction::from_parts(LaurentPoly::monomial(pref), &ws)?,
        factors,
    })
}

fn x1_b(l1: &Partition2D, l2: &Partition2D) -> Result<ClosedSummand> {
    let (l1t, l2t) = (l1.conjugate(), l2.conjugate());
    let mut ws = hooks(l1, VQ, VT);
    ws.extend(hooks(l2, VT, VQ));
    let pref = Monomial::from_exps(&[(VT, l1.norm2() as i32), (VQ, l2.norm2() as i32)]);
    let factors = alloc::vec![
        num(var(M1), al(VQ, VT, l1), rho(VT)),
        num(var(M2), al(VQ, VT, l1), rho(VT)),
        num(var(M3), al(VT, VQ, l2), rho(VQ)),
        num(var(M4), al(VT, VQ, l2), rho(VQ)),
        num(var(M1) * var(V), al(VQ, VT, &l2t), rho(VT)),
        num(var(M2) * var(V), al(VQ, VT, &l2t), rho(VT)),
        num(var(M3) * var(V), al(VT, VQ, &l1t), rho(VQ)),
        num(var(M4) * var(V), al(VT, VQ, &l1t), rho(VQ)),
        den(var(V), sq_tq().inv(), al(VT, VQ, &l1t), al(VQ, VT, &l2t)),
        den(var(V), sq_tq(), al(VQ, VT, &l2t), al(VT, VQ, &l1t)),
        den(var(V) * var(M1) * var(M4), sq_tq(), rho(VQ), rho(VT)),
        den(var(V) * var(M2) * var(M3), sq_tq().inv(), rho(VT), rho(VQ)),
    ];
    Ok(ClosedSummand {
        label: alloc::format!("la1={} la2={}", l1, l2),
        weight: var(U).pow((l1.size() + l2.size()) as i32),
        coef: RationalFunction::from_parts(LaurentPoly::monomial(pref), &ws)?,
        factors,
    })
}

fn x2_a() -> ClosedSummand {
    let factors = alloc::vec![
        num(var(M1), rho(VT), rho(VQ)),
        num(var(M2), rho(VQ), rho(VT)),
        num(var(M1) * var(U), rho(VT), rho(VQ)),
        num(var(M2) * var(U), rho(VQ), rho(VT)),
        den(var(U), sq_tq(), rho(VQ), rho(VT)),
        den(var(U) * var(M1) * var(M2), sq_tq().inv(), rho(VT), rho(VQ)),
    ];
    ClosedSummand { label: String::from("single"), weight: Monomial::ONE, coef: RationalFunction::one(), factors }
}

fn x2_b(l: &Partition2D) -> Result<ClosedSummand> {
    let pref = Monomial::from_exps(&[(VT, l.norm2() as i32)]);
    let factors = alloc::vec![num(var(M1), al(VQ, VT, l), rho(VT)), num(var(M2), al(VQ, VT, l), rho(VT))];
    Ok(ClosedSummand {
        label: alloc::format!("la={}", l),
        weight: var(U).pow(l.size() as i32),
        coef: RationalFunction::from_parts(LaurentPoly::monomial(pref), &hooks(l, VQ, VT))?,
        factors,
    })
}

/// Summands of the closed form, enough to fill `template`.
pub fn closed_form_summands(geom: Geometry, regime: Regime, template: &[Grading]) -> Result<Vec<ClosedSummand>> {
    match (geom, regime) {
        (Geometry::X1, Regime::A) => pairs(max_degree(template, V)?).iter().map(|(a, b)| x1_a(a, b)).collect(),
        (Geometry::X1, Regime::B) => pairs(max_degree(template, U)?).iter().map(|(a, b)| x1_b(a, b)).collect(),
        (Geometry::X2, Regime::A) => Ok(alloc::vec![x2_a()]),
        (Geometry::X2, Regime::B) => partitions_up_to(max_degree(template, U)?).iter().map(x2_b).collect(),
    }
}

/// `template` with room left for a prefactor of grade `grade(w)`, or `None`
/// if the prefactor alone is out of range.
fn lowered(template: &[Grading], w: &Monomial) -> Option<Vec<Grading>> {
    let mut out = Vec::with_capacity(template.len());
    for g in template {
        let mut g = g.clone();
        if g.bound < EXACT {
            g.bound -= g.grade(w);
            if g.bound < 0 {
                return None;
            }
        }
        out.push(g);
    }
    Some(out)
}

pub fn evaluate_summand(s: &ClosedSummand, template: &[Grading]) -> Result<RSeries> {
    let Some(tm) = lowered(template, &s.weight) else {
        return Ok(RSeries::zero(template).truncated(template));
    };
    let mut log = RSeries::zero(&tm).truncated(&tm);
    for f in s.factors.iter() {
        log = log.add(&f.log(&tm)?);
    }
    Ok(log.exp()?.scale(&s.coef).shift(s.weight).truncated(template))
}

pub fn evaluate(summands: Vec<ClosedSummand>, template: &[Grading]) -> Result<RSeries> {
    let zero = Ok(RSeries::zero(template).truncated(template));
    par::map_reduce(summands, zero, |s| evaluate_summand(&s, template), |a, b| Ok(a?.add(&b?)))
}

/// The closed form of the reduced limit, exact in `t, q`.
pub fn closed_form_limit(geom: Geometry, regime: Regime, template: &[Grading]) -> Result<RSeries> {
    evaluate(closed_form_summands(geom, regime, template)?, template)
}

fn tq_degree(m: &Monomial) -> i64 {
    m.get(VT) as i64 + m.get(VQ) as i64
}

/// Power series expansion of a rational function in `t, q` up to total
/// degree `order`.
pub fn expand_rf(f: &RationalFunction, order: i64) -> Result<Series> {
    let target = alloc::vec![Grading::degree(&[VT, VQ], order)];
    let low = f.numerator().terms().map(|(m, _)| tq_degree(m)).min().unwrap_or(0);
    let extra = (-low).max(0);
    let wide = alloc::vec![Grading::weighted(target[0].weights, 2 * order + extra)];
    let mut acc = Series::from_terms(&wide, f.numerator().terms().map(|(m, c)| (*m, c.clone())));
    for (w, &k) in f.denominator().iter() {
        let g = Series::geometric(&wide, rat(1), *w)?;
        for _ in 0..k {
            acc = acc.mul(&g);
        }
    }
    if acc.bound(0) < 2 * order {
        return Err(Error::Invariant(alloc::format!("expansion reached only degree {}", acc.bound(0))));
    }
    Ok(acc.truncated(&target))
}

/// Expands every coefficient, giving a series graded by Kähler degree at
/// most `d` and `(t, q)` degree at most `order`.
pub fn expand_series(s: &RSeries, d: i64, order: i64) -> Result<Series> {
    let items: Vec<(Monomial, RationalFunction)> = s.terms().map(|(m, c)| (*m, c.clone())).collect();
    let parts: Vec<Result<(Monomial, Series)>> = par::map_collect(items, |(m, c)| Ok((m, expand_rf(&c, order)?)));
    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for p in parts {
        let (k, e) = p?;
        for (m, c) in e.terms() {
            *terms.entry(k * *m).or_default() += c;
        }
    }
    Ok(Series::from_terms(&expanded_template(d, order), terms))
}
