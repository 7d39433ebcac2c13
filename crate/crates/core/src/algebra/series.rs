use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::monomial::{Monomial, MAX_VARS};
use super::rational::{fmt_rational, rat, Rational};
use super::ratfun::RationalFunction;
use super::subst::Subst;
use super::vars::VarTable;
use crate::{Error, Result};

/// Bound meaning "no truncation"; also the floor of the zero series.
pub const EXACT: i64 = i64::MAX / 4;

fn sat(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// Coefficient ring of a truncated series.
pub trait Coef: Clone + PartialEq + core::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Raises every variable to the n-th power.
    fn psi(&self, n: i32) -> Self;
    fn substitute(&self, s: &Subst) -> Result<Self>;
    fn fmt_with(&self, vars: &VarTable) -> String;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn sum_many(items: Vec<Self>) -> Self {
        items.iter().fold(Self::zero(), |a, b| a.add(b))
    }
}

impl Coef for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::Domain(String::from("inverse of 0")))
        } else {
            Ok(<Rational as One>::one() / self)
        }
    }
    fn psi(&self, _n: i32) -> Self {
        self.clone()
    }
    fn substitute(&self, _s: &Subst) -> Result<Self> {
        Ok(self.clone())
    }
    fn fmt_with(&self, _vars: &VarTable) -> String {
        fmt_rational(self)
    }
}

impl Coef for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        LaurentPoly::constant(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        LaurentPoly::scale(self, r)
    }
    fn inv(&self) -> Result<Self> {
        let (c, m) = self
            .as_term()
            .ok_or_else(|| Error::Domain(String::from("inverse needs a single term")))?;
        Ok(LaurentPoly::term(<Rational as One>::one() / c, m.inv()))
    }
    fn psi(&self, n: i32) -> Self {
        LaurentPoly::psi(self, n)
    }
    fn substitute(&self, s: &Subst) -> Result<Self> {
        LaurentPoly::substitute(self, s)
    }
    fn fmt_with(&self, vars: &VarTable) -> String {
        LaurentPoly::fmt_with(self, vars)
    }
    fn sum_many(items: Vec<Self>) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in items {
            for (m, c) in p.into_terms() {
                acc.add_term(m, c);
            }
        }
        acc
    }
}

impl Coef for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        RationalFunction::constant(r)
    }
    fn scale(&self, r: &Rational) -> Self {
        RationalFunction::scale(self, r)
    }
    fn inv(&self) -> Result<Self> {
        RationalFunction::inv(self)
    }
    fn psi(&self, n: i32) -> Self {
        RationalFunction::psi(self, n)
    }
    fn substitute(&self, s: &Subst) -> Result<Self> {
        RationalFunction::substitute(self, s)
    }
    fn fmt_with(&self, vars: &VarTable) -> String {
        RationalFunction::fmt_with(self, vars)
    }
    fn sum_many(items: Vec<Self>) -> Self {
        // one common denominator instead of pairwise lcms
        let items: Vec<Self> = items.into_iter().filter(|c| !c.is_zero()).collect();
        match items.len() {
            0 => return RationalFunction::zero(),
            1 => return items.into_iter().next().unwrap(),
            _ => {}
        }
        let mut l: BTreeMap<Monomial, u32> = BTreeMap::new();
        for c in items.iter() {
            for (w, &k) in c.denominator().iter() {
                let e = l.entry(*w).or_insert(0);
                *e = (*e).max(k);
            }
        }
        let mut num = LaurentPoly::zero();
        for c in items.iter() {
            let mut n = c.numerator().clone();
            for (w, &k) in l.iter() {
                for _ in c.denominator().get(w).copied().unwrap_or(0)..k {
                    n = n.mul_one_minus(*w);
                }
            }
            for (m, v) in n.into_terms() {
                num.add_term(m, v);
            }
        }
        let mut ws = Vec::new();
        for (w, &k) in l.iter() {
            for _ in 0..k {
                ws.push(w.inv().inv());
            }
        }
        RationalFunction::from_parts(num, &ws).expect("stored weights are never 1").cancel()
    }
}

/// A linear grading of the exponent lattice (applied to doubled exponents)
/// with the truncation bound it carries. `floor` is a certified lower bound
/// for the grade of every term of the exact series being approximated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: [i64; MAX_VARS],
    pub bound: i64,
    pub floor: i64,
}

impl Grading {
    /// Total degree in `vars` at most `bound` (ordinary, not doubled, units).
    pub fn degree(vars: &[usize], bound: i64) -> Self {
        let mut weights = [0; MAX_VARS];
        for &v in vars {
            weights[v] = 1;
        }
        Grading { weights, bound: 2 * bound, floor: 0 }
    }

    /// Weighted degree with the bound given in doubled units.
    pub fn weighted(weights: [i64; MAX_VARS], doubled_bound: i64) -> Self {
        Grading { weights, bound: doubled_bound, floor: 0 }
    }

    pub fn grade(&self, m: &Monomial) -> i64 {
        m.weighted(&self.weights)
    }
}

/// Multivariate series, truncated independently in each grading: a term is
/// stored only if its grade is at most the bound of every grading, and every
/// such term is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C: Coef> {
    terms: BTreeMap<Monomial, C>,
    gradings: Vec<Grading>,
}

impl<C: Coef> TruncatedSeries<C> {
    /// Exact zero with the weights of `template`.
    pub fn zero(template: &[Grading]) -> Self {
        let gradings = template
            .iter()
            .map(|g| Grading { weights: g.weights, bound: EXACT, floor: EXACT })
            .collect();
        TruncatedSeries { terms: BTreeMap::new(), gradings }
    }

    /// The polynomial `terms`, truncated to the bounds of `template`.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(template: &[Grading], terms: I) -> Self {
        let mut s = Self::zero(template);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s.refresh_floors();
        s.lower_bounds(template);
        s
    }

    pub fn one(template: &[Grading]) -> Self {
        Self::from_terms(template, [(Monomial::ONE, C::one())])
    }

    pub fn constant(template: &[Grading], c: C) -> Self {
        Self::from_terms(template, [(Monomial::ONE, c)])
    }

    pub fn term(template: &[Grading], m: Monomial, c: C) -> Self {
        Self::from_terms(template, [(m, c)])
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn refresh_floors(&mut self) {
        for g in self.gradings.iter_mut() {
            g.floor = self.terms.keys().map(|m| m.weighted(&g.weights)).min().unwrap_or(EXACT);
        }
    }

    fn prune(&mut self) {
        let gradings = &self.gradings;
        self.terms.retain(|m, _| gradings.iter().all(|g| g.bound >= EXACT || m.weighted(&g.weights) <= g.bound));
    }

    /// Lowers bounds to those of `template` (never raises them).
    pub fn lower_bounds(&mut self, template: &[Grading]) {
        self.check_weights(template);
        for (g, t) in self.gradings.iter_mut().zip(template.iter()) {
            g.bound = g.bound.min(t.bound);
        }
        self.prune();
    }

    pub fn truncated(mut self, template: &[Grading]) -> Self {
        self.lower_bounds(template);
        self
    }

    /// Forgets everything above `bound` in grading `i`.
    pub fn truncate_grading(mut self, i: usize, bound: i64) -> Self {
        self.gradings[i].bound = self.gradings[i].bound.min(bound);
        self.prune();
        self
    }

    fn check_weights(&self, other: &[Grading]) {
        assert_eq!(self.gradings.len(), other.len(), "grading count mismatch");
        for (a, b) in self.gradings.iter().zip(other.iter()) {
            assert_eq!(a.weights, b.weights, "grading weights mismatch");
        }
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    /// Declares a stronger floor the caller can certify (e.g. from structure
    /// the truncation hides).
    pub fn with_floor(mut self, i: usize, floor: i64) -> Self {
        self.gradings[i].floor = self.gradings[i].floor.max(floor);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn bound(&self, i: usize) -> i64 {
        self.gradings[i].bound
    }

    pub fn floor(&self, i: usize) -> i64 {
        self.gradings[i].floor
    }

    /// Grading-wise minimum of two bound lists, for comparisons.
    fn common(&self, o: &Self) -> Vec<Grading> {
        self.check_weights(&o.gradings);
        self.gradings
            .iter()
            .zip(o.gradings.iter())
            .map(|(a, b)| Grading { weights: a.weights, bound: a.bound.min(b.bound), floor: a.floor.min(b.floor) })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = TruncatedSeries { terms: self.terms.clone(), gradings: self.common(o) };
        for (m, c) in o.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out.prune();
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
            gradings: self.gradings.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = TruncatedSeries { terms: BTreeMap::new(), gradings: self.gradings.clone() };
        for (m, v) in self.terms.iter() {
            out.add_term(*m, v.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = TruncatedSeries { terms: BTreeMap::new(), gradings: self.gradings.clone() };
        for (m, v) in self.terms.iter() {
            out.add_term(*m, v.scale(r));
        }
        out
    }

    /// Multiplies by the monomial `m` (exact; bounds and floors shift).
    pub fn shift(&self, m: Monomial) -> Self {
        let gradings = self
            .gradings
            .iter()
            .map(|g| {
                let d = m.weighted(&g.weights);
                let mv = |x: i64| if x >= EXACT { EXACT } else { x + d };
                Grading { weights: g.weights, bound: mv(g.bound), floor: mv(g.floor) }
            })
            .collect();
        TruncatedSeries { terms: self.terms.iter().map(|(k, c)| (*k * m, c.clone())).collect(), gradings }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut gradings = self.common(o);
        for (i, g) in gradings.iter_mut().enumerate() {
            let (a, b) = (&self.gradings[i], &o.gradings[i]);
            g.floor = sat(a.floor, b.floor);
            let nb = sat(a.bound, b.floor).min(sat(b.bound, a.floor));
            g.bound = nb;
            if a.bound < EXACT && b.bound < EXACT {
                // never carry more precision than either factor was asked for
                g.bound = nb.min(a.bound.min(b.bound));
            }
        }
        let grade = |m: &Monomial| -> Vec<i64> { gradings.iter().map(|g| m.weighted(&g.weights)).collect() };
        let a: Vec<(Monomial, Vec<i64>, &C)> = self.terms.iter().map(|(m, c)| (*m, grade(m), c)).collect();
        let b: Vec<(Monomial, Vec<i64>, &C)> = o.terms.iter().map(|(m, c)| (*m, grade(m), c)).collect();
        let mut acc: BTreeMap<Monomial, Vec<C>> = BTreeMap::new();
        for (ma, ga, ca) in a.iter() {
            'inner: for (mb, gb, cb) in b.iter() {
                for (i, g) in gradings.iter().enumerate() {
                    if g.bound < EXACT && ga[i] + gb[i] > g.bound {
                        continue 'inner;
                    }
                }
                acc.entry(*ma * *mb).or_default().push(ca.mul(cb));
            }
        }
        let mut terms = BTreeMap::new();
        for (m, cs) in acc {
            let c = C::sum_many(cs);
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        TruncatedSeries { terms, gradings }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.gradings).truncated(&self.gradings);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Checks that powers of `self` die out under truncation: all floors are
    /// nonnegative and every term has positive grade in some bounded grading.
    fn check_nilpotent(&self) -> Result<()> {
        if self.gradings.iter().any(|g| g.floor < 0) {
            return Err(Error::Domain(String::from("negative floor in a nilpotent argument")));
        }
        for m in self.terms.keys() {
            if !self.gradings.iter().any(|g| g.bound < EXACT && m.weighted(&g.weights) > 0) {
                return Err(Error::Domain(format!("term {:?} is not cut off by any grading", m.0)));
            }
        }
        Ok(())
    }

    /// `1 / (1 - c*m)` expanded in the direction where `m` has positive grade.
    pub fn geometric(template: &[Grading], c: C, m: Monomial) -> Result<Self> {
        if m.is_one() {
            return Err(Error::DegenerateFactor);
        }
        let grades: Vec<i64> = template.iter().map(|g| m.weighted(&g.weights)).collect();
        let pos = grades.iter().all(|&d| d >= 0) && grades.iter().any(|&d| d > 0);
        let neg = grades.iter().all(|&d| d <= 0) && grades.iter().any(|&d| d < 0);
        let (first, step_c, step_m) = if pos {
            (Self::one(template), c, m)
        } else if neg {
            // 1/(1-x) = -x^-1/(1-x^-1)
            let ci = c.inv()?;
            (Self::term(template, m.inv(), ci.neg()), ci, m.inv())
        } else {
            return Err(Error::Direction(format!("monomial {:?} has mixed or zero grade", m.0)));
        };
        let g_step: Vec<i64> = template.iter().map(|g| step_m.weighted(&g.weights)).collect();
        if !template.iter().zip(g_step.iter()).any(|(g, &d)| d > 0 && g.bound < EXACT) {
            return Err(Error::Direction(String::from("no bounded grading truncates the expansion")));
        }
        let mut terms: Vec<(Monomial, C)> = Vec::new();
        let mut cur_c = C::one();
        let mut cur_m = Monomial::ONE;
        loop {
            let inside = template.iter().all(|g| {
                let d = cur_m.weighted(&g.weights);
                g.bound >= EXACT || d <= g.bound
            });
            if !inside {
                break;
            }
            terms.push((cur_m, cur_c.clone()));
            cur_c = cur_c.mul(&step_c);
            cur_m = cur_m * step_m;
        }
        let mut s = TruncatedSeries::from_terms(template, terms);
        for g in s.gradings.iter_mut() {
            g.floor = 0;
        }
        Ok(first.mul(&s))
    }

    /// Multiplicative inverse; needs an invertible constant term and a
    /// remainder whose powers die out.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff(&Monomial::ONE);
        let c0i = c0.inv()?;
        let mut r = self.clone();
        r.terms.remove(&Monomial::ONE);
        r.refresh_floors_keep_bounds();
        let r = r.scale(&c0i.neg());
        r.check_nilpotent()?;
        let mut acc = Self::one(&self.gradings).truncated(&self.gradings);
        let mut p = acc.clone();
        loop {
            p = p.mul(&r);
            if p.is_empty() {
                let gradings = acc.common(&p);
                acc = TruncatedSeries { terms: acc.terms, gradings };
                break;
            }
            acc = acc.add(&p);
        }
        Ok(acc.scale(&c0i))
    }

    fn refresh_floors_keep_bounds(&mut self) {
        for g in self.gradings.iter_mut() {
            let m = self.terms.keys().map(|m| m.weighted(&g.weights)).min().unwrap_or(EXACT);
            g.floor = g.floor.max(m.min(EXACT));
        }
    }

    /// `exp` of a series with no constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&Monomial::ONE).is_zero() {
            return Err(Error::Domain(String::from("exp needs a zero constant term")));
        }
        self.check_nilpotent()?;
        let mut acc = Self::one(&self.gradings).truncated(&self.gradings);
        let mut p = acc.clone();
        let mut k = 1i64;
        loop {
            p = p.mul(self).scale_rational(&(rat(1) / rat(k)));
            if p.is_empty() {
                let gradings = acc.common(&p);
                acc = TruncatedSeries { terms: acc.terms, gradings };
                break;
            }
            acc = acc.add(&p);
            k += 1;
        }
        Ok(acc)
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(&Monomial::ONE) != C::one() {
            return Err(Error::Domain(String::from("log needs constant term 1")));
        }
        let mut r = self.clone();
        r.terms.remove(&Monomial::ONE);
        r.refresh_floors_keep_bounds();
        r.check_nilpotent()?;
        let mut acc = Self::zero(&self.gradings).truncated(&self.gradings);
        let mut p = Self::one(&self.gradings).truncated(&self.gradings);
        let mut k = 1i64;
        loop {
            p = p.mul(&r);
            if p.is_empty() {
                let gradings = acc.common(&p);
                acc = TruncatedSeries { terms: acc.terms, gradings };
                break;
            }
            let sign = if k % 2 == 1 { rat(1) } else { rat(-1) };
            acc = acc.add(&p.scale_rational(&(sign / rat(k))));
            k += 1;
        }
        Ok(acc)
    }

    /// Adams operation: every variable, in keys and coefficients, to the n-th power.
    pub fn psi(&self, n: i32) -> Self {
        assert!(n > 0);
        let gradings = self
            .gradings
            .iter()
            .map(|g| {
                let sc = |x: i64| if x >= EXACT { EXACT } else { x * n as i64 };
                Grading { weights: g.weights, bound: sc(g.bound), floor: sc(g.floor) }
            })
            .collect();
        TruncatedSeries { terms: self.terms.iter().map(|(m, c)| (m.pow(n), c.psi(n))).collect(), gradings }
    }

    /// Plethystic exponential `exp(Σ ψⁿ(self)/n)`.
    pub fn pleth_exp(&self) -> Result<Self> {
        if !self.coeff(&Monomial::ONE).is_zero() {
            return Err(Error::Domain(String::from("plethystic argument has a constant term")));
        }
        self.check_nilpotent()?;
        let mut log = self.clone();
        let mut n = 2;
        loop {
            let p = self.psi(n).truncated(&self.gradings);
            if p.is_empty() {
                break;
            }
            log = log.add(&p.scale_rational(&(rat(1) / rat(n as i64))));
            n += 1;
        }
        log.exp()
    }

    /// Keeps the terms whose key satisfies `pred` (sound: exactness is per term).
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (*m, c.clone())).collect(),
            gradings: self.gradings.clone(),
        }
    }

    pub fn map_coeffs<F: Fn(&C) -> Result<C>>(&self, f: F) -> Result<Self> {
        let mut out = TruncatedSeries { terms: BTreeMap::new(), gradings: self.gradings.clone() };
        for (m, c) in self.terms.iter() {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Converts the coefficient ring.
    pub fn map_into<D: Coef, F: Fn(&C) -> Result<D>>(&self, f: F) -> Result<TruncatedSeries<D>> {
        let mut out = TruncatedSeries::<D> { terms: BTreeMap::new(), gradings: self.gradings.clone() };
        for (m, c) in self.terms.iter() {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Exchanges two variables in keys, coefficients and grading weights.
    pub fn swap_vars(&self, a: usize, b: usize) -> Result<Self> {
        let s = Subst::new().swap(a, b);
        let gradings = self
            .gradings
            .iter()
            .map(|g| {
                let mut w = g.weights;
                w.swap(a, b);
                Grading { weights: w, bound: g.bound, floor: g.floor }
            })
            .collect();
        let mut out = TruncatedSeries { terms: BTreeMap::new(), gradings };
        for (m, c) in self.terms.iter() {
            out.add_term(m.swap_vars(a, b), c.substitute(&s)?);
        }
        Ok(out)
    }

    /// Reorders the gradings to follow `template`, matching by weights.
    pub fn align_gradings(mut self, template: &[Grading]) -> Self {
        let mut out = Vec::with_capacity(template.len());
        for t in template {
            let i = self
                .gradings
                .iter()
                .position(|g| g.weights == t.weights)
                .expect("no grading with matching weights");
            out.push(self.gradings.remove(i));
        }
        assert!(self.gradings.is_empty(), "extra gradings left after alignment");
        self.gradings = out;
        self
    }

    /// Substitutes in keys and coefficients and re-truncates to `template`.
    ///
    /// Soundness is the caller's: every image term must have grade at least
    /// the source term's grade in each bounded grading of `template` (true for
    /// the rescalings this crate performs, which only add nonnegative grade).
    pub fn substitute(&self, s: &Subst, template: &[Grading]) -> Result<Self> {
        let mut out = TruncatedSeries::<C>::zero(template);
        let mut acc: BTreeMap<Monomial, Vec<C>> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let (k, img) = s.apply(m)?;
            if Zero::is_zero(&k) {
                continue;
            }
            acc.entry(img).or_default().push(c.substitute(s)?.scale(&k));
        }
        for (m, cs) in acc {
            out.add_term(m, C::sum_many(cs));
        }
        for (g, t) in out.gradings.iter_mut().zip(template.iter()) {
            g.bound = t.bound;
        }
        out.refresh_floors();
        out.prune();
        Ok(out)
    }

    /// First coefficient, in graded-lex order, where the two series differ
    /// inside their common truncation region.
    pub fn first_difference(&self, o: &Self) -> Option<(Monomial, C, C)> {
        let common = self.common(o);
        let inside = |m: &Monomial| common.iter().all(|g| g.bound >= EXACT || m.weighted(&g.weights) <= g.bound);
        let mut keys: Vec<Monomial> = self.terms.keys().chain(o.terms.keys()).copied().filter(|m| inside(m)).collect();
        keys.sort_by_key(|m| m.grlex_key());
        keys.dedup();
        for m in keys {
            let (a, b) = (self.coeff(&m), o.coeff(&m));
            if a != b {
                return Some((m, a, b));
            }
        }
        None
    }

    /// Keys in output order (graded-lex).
    pub fn sorted_keys(&self) -> Vec<Monomial> {
        let mut keys: Vec<Monomial> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| m.grlex_key());
        keys
    }

    pub fn fmt_with(&self, vars: &VarTable) -> String {
        let mut out = String::new();
        for m in self.sorted_keys() {
            out.push_str(&format!("{}\t{}\n", m.fmt_with(vars), self.terms[&m].fmt_with(vars)));
        }
        out
    }

    /// Builds from raw parts; used when deserializing.
    pub fn from_raw(terms: BTreeMap<Monomial, C>, gradings: Vec<Grading>) -> Self {
        let mut s = TruncatedSeries { terms: BTreeMap::new(), gradings };
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpl(order: i64) -> Vec<Grading> {
        alloc::vec![Grading::degree(&[0], order)]
    }

    fn t(e: i32) -> Monomial {
        Monomial::from_exps(&[(0, e)])
    }

    #[test]
    fn geometric_positive() {
        let s = TruncatedSeries::<Rational>::geometric(&tmpl(3), rat(1), t(1)).unwrap();
        let want = TruncatedSeries::from_terms(&tmpl(3), (0..=3).map(|k| (t(k), rat(1))));
        assert_eq!(s.first_difference(&want), None);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn geometric_negative_direction() {
        let g = alloc::vec![Grading::weighted(
            {
                let mut w = [0; MAX_VARS];
                w[0] = -1;
                w
            },
            6
        )];
        let s = TruncatedSeries::<Rational>::geometric(&g, rat(1), t(1)).unwrap();
        let want = TruncatedSeries::from_terms(&g, (1..=3).map(|k| (t(-k), rat(-1))));
        assert_eq!(s.first_difference(&want), None);
    }

    #[test]
    fn geometric_rejects_one_and_mixed() {
        assert_eq!(TruncatedSeries::<Rational>::geometric(&tmpl(3), rat(1), Monomial::ONE).unwrap_err(), Error::DegenerateFactor);
        let g = alloc::vec![Grading::degree(&[0, 1], 4)];
        let m = Monomial::from_exps(&[(0, 1), (1, -1)]);
        assert!(matches!(TruncatedSeries::<Rational>::geometric(&g, rat(1), m), Err(Error::Direction(_))));
    }

    #[test]
    fn inverse_and_exp_log() {
        let g = tmpl(6);
        let a = TruncatedSeries::from_terms(&g, [(Monomial::ONE, rat(1)), (t(1), rat(-3)), (t(2), rat(2))]);
        let ai = a.inv().unwrap();
        let one = TruncatedSeries::one(&g);
        assert_eq!(a.mul(&ai).first_difference(&one), None);
        let l = a.log().unwrap();
        let back = l.exp().unwrap();
        assert_eq!(back.first_difference(&a), None);
        assert_eq!(back.bound(0), 12);
    }

    #[test]
    fn truncation_bound_tracks_floors() {
        // (t^-1 + 1) exact times a series known to order 4 is known to order 3
        let g = tmpl(4);
        let a = TruncatedSeries::<Rational>::geometric(&g, rat(1), t(1)).unwrap();
        let b = TruncatedSeries::<Rational>::from_terms(&[Grading { bound: EXACT, ..g[0].clone() }], [(t(-1), rat(1)), (Monomial::ONE, rat(1))]);
        let p = a.mul(&b);
        assert_eq!(p.bound(0), 6);
        assert_eq!(p.floor(0), -2);
    }
}
