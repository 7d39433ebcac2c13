use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::{fmt_rational, Rational};
use super::subst::Subst;
use super::vars::VarTable;
use crate::Result;

/// Finite sum of monomials with rational coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    /// `1 - w`.
    pub fn one_minus(w: Monomial) -> Self {
        let mut p = Self::one();
        p.add_term(w, -Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some((c, m))` when the polynomial is a single term.
    pub fn as_term(&self) -> Option<(Rational, Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *m))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, w: Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (*m * w, v.clone())).collect() }
    }

    /// Multiplies by `1 - w` in place of a full product.
    pub fn mul_one_minus(&self, w: Monomial) -> Self {
        let mut out = self.clone();
        for (m, v) in self.terms.iter() {
            out.add_term(*m * w, -v.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Raises every variable to the n-th power.
    pub fn psi(&self, n: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (m.pow(n), v.clone())).collect() }
    }

    pub fn substitute(&self, s: &Subst) -> Result<Self> {
        if s.is_identity() {
            return Ok(self.clone());
        }
        let mut out = Self::zero();
        for (m, v) in self.terms.iter() {
            let (c, img) = s.apply(m)?;
            out.add_term(img, c * v);
        }
        Ok(out)
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (f(m), v.clone())))
    }

    /// Exact quotient by `1 - w`, or `None` when it does not divide.
    ///
    /// Monomials are grouped into cosets of the lattice line through `w`;
    /// inside a coset the quotient coefficients are prefix sums, and the
    /// division is exact iff every coset sums to zero.
    pub fn div_one_minus(&self, w: &Monomial) -> Option<Self> {
        let p = w.0.iter().position(|&e| e != 0)?;
        let vp = w.0[p];
        let mut cosets: BTreeMap<Monomial, BTreeMap<i32, &Rational>> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let k = num_integer::Integer::div_floor(&m.0[p], &vp);
            let r = *m / w.pow(k);
            cosets.entry(r).or_default().insert(k, c);
        }
        let mut out = Self::zero();
        for (r, row) in cosets {
            let k0 = *row.keys().next().unwrap();
            let k1 = *row.keys().next_back().unwrap();
            let mut s = Rational::zero();
            for k in k0..=k1 {
                if let Some(c) = row.get(&k) {
                    s += *c;
                }
                if k == k1 {
                    if !s.is_zero() {
                        return None;
                    }
                } else if !s.is_zero() {
                    out.terms.insert(r * w.pow(k), s.clone());
                }
            }
        }
        Some(out)
    }

    /// Minimum and maximum doubled exponent of a variable.
    pub fn degree_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.0[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Keeps the terms whose monomials satisfy `pred`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, v)| (*m, v.clone())).collect(),
        }
    }

    pub fn fmt_with(&self, vars: &VarTable) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| m.grlex_key());
        let mut out = String::new();
        for (i, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&m.fmt_with(vars));
            } else {
                out.push_str(&fmt_rational(&a));
                out.push('*');
                out.push_str(&m.fmt_with(vars));
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, v) in small.terms.iter() {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, v) in rhs.terms.iter() {
            out.add_term(*m, -v.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, va) in self.terms.iter() {
            for (mb, vb) in rhs.terms.iter() {
                out.add_term(*ma * *mb, va * vb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, v)| (*m, -v.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
