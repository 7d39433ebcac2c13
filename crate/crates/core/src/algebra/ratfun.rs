use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::rational::Rational;
use super::subst::Subst;
use super::vars::VarTable;
use crate::{Error, Result};

/// `num / ∏ (1 - w)^k`. Each stored `w` is oriented so its first nonzero
/// exponent is negative; the monomial unit is folded into `num`.
#[derive(Clone, Debug, Default)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: BTreeMap<Monomial, u32>,
}

/// Orientation of a denominator weight: `(1 - w) = -w (1 - w^-1)`.
fn orient(w: Monomial) -> (Monomial, bool) {
    match w.0.iter().find(|&&e| e != 0) {
        Some(&e) if e > 0 => (w.inv(), true),
        _ => (w, false),
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RationalFunction { num, den: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPoly::monomial(m))
    }

    /// `1 / (1 - w)`.
    pub fn inv_one_minus(w: Monomial) -> Result<Self> {
        Self::from_parts(LaurentPoly::one(), &[w])
    }

    /// `num / ∏ (1 - w_i)` with arbitrary orientation of the `w_i`.
    pub fn from_parts(num: LaurentPoly, factors: &[Monomial]) -> Result<Self> {
        let mut out = Self::from_poly(num);
        for &w in factors {
            if w.is_one() {
                return Err(Error::DegenerateFactor);
            }
            let (c, flipped) = orient(w);
            if flipped {
                out.num = -&out.num.mul_monomial(c);
            }
            *out.den.entry(c).or_insert(0) += 1;
        }
        if out.num.is_zero() {
            out.den.clear();
        }
        Ok(out)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator weights with multiplicities.
    pub fn denominator(&self) -> &BTreeMap<Monomial, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Number of denominator factors with multiplicity.
    pub fn den_degree(&self) -> u32 {
        self.den.values().sum()
    }

    /// Removes every factor `(1 - w)` that divides the numerator.
    pub fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let ws: Vec<Monomial> = self.den.keys().copied().collect();
        for w in ws {
            loop {
                let k = self.den[&w];
                match self.num.div_one_minus(&w) {
                    Some(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&w);
                            break;
                        }
                        self.den.insert(w, k - 1);
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn lcm(a: &BTreeMap<Monomial, u32>, b: &BTreeMap<Monomial, u32>) -> BTreeMap<Monomial, u32> {
        let mut l = a.clone();
        for (w, &k) in b.iter() {
            let e = l.entry(*w).or_insert(0);
            *e = (*e).max(k);
        }
        l
    }

    /// Numerator over the larger denominator `target`.
    fn lift(&self, target: &BTreeMap<Monomial, u32>) -> LaurentPoly {
        let mut n = self.num.clone();
        for (w, &k) in target.iter() {
            let have = self.den.get(w).copied().unwrap_or(0);
            for _ in have..k {
                n = n.mul_one_minus(*w);
            }
        }
        n
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let num = &self.num * p;
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den: self.den.clone() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        RationalFunction { num: self.num.mul_monomial(m), den: self.den.clone() }
    }

    /// Inverse, available when the numerator is a single term.
    pub fn inv(&self) -> Result<Self> {
        let (c, m) = self
            .num
            .as_term()
            .ok_or_else(|| Error::Domain(String::from("inverse needs a monomial numerator")))?;
        let mut num = LaurentPoly::term(Rational::one() / c, m.inv());
        for (w, &k) in self.den.iter() {
            for _ in 0..k {
                num = num.mul_one_minus(*w);
            }
        }
        Ok(Self::from_poly(num))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Raises every variable to the n-th power (n > 0).
    pub fn psi(&self, n: i32) -> Self {
        assert!(n > 0);
        RationalFunction {
            num: self.num.psi(n),
            den: self.den.iter().map(|(w, k)| (w.pow(n), *k)).collect(),
        }
    }

    pub fn substitute(&self, s: &Subst) -> Result<Self> {
        if s.is_identity() {
            return Ok(self.clone());
        }
        let mut num = self.num.substitute(s)?;
        let mut factors: Vec<Monomial> = Vec::new();
        for (w, &k) in self.den.iter() {
            let (c, m) = s.apply(w)?;
            for _ in 0..k {
                if c.is_zero() {
                    continue;
                }
                if c.is_one() {
                    if m.is_one() {
                        return Err(Error::Pole(format!("denominator weight {:?} sent to 1", w.0)));
                    }
                    factors.push(m);
                } else if c == -Rational::one() {
                    // 1/(1 + m) = (1 - m)/(1 - m^2)
                    num = num.mul_one_minus(m);
                    factors.push(m.pow(2));
                } else {
                    return Err(Error::Pole(String::from("denominator weight sent to a non-unit multiple")));
                }
            }
        }
        Ok(Self::from_parts(num, &factors)?.cancel())
    }

    /// Applies `f` to every monomial of numerator and denominator; `f` must be
    /// a group homomorphism of the exponent lattice.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Result<Self> {
        let num = self.num.map_monomials(&f);
        let mut factors = Vec::new();
        for (w, &k) in self.den.iter() {
            for _ in 0..k {
                factors.push(f(w));
            }
        }
        Self::from_parts(num, &factors)
    }

    pub fn fmt_with(&self, vars: &VarTable) -> String {
        if self.den.is_empty() {
            return self.num.fmt_with(vars);
        }
        let mut d: Vec<String> = Vec::new();
        for (w, &k) in self.den.iter() {
            for _ in 0..k {
                d.push(format!("(1 - {})", w.fmt_with(vars)));
            }
        }
        format!("({}) / ({})", self.num.fmt_with(vars), d.join("*"))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let l = Self::lcm(&self.den, &other.den);
        self.lift(&l) == other.lift(&l)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RationalFunction { num, den: self.den.clone() }.cancel();
        }
        let l = RationalFunction::lcm(&self.den, &rhs.den);
        let num = &self.lift(&l) + &rhs.lift(&l);
        RationalFunction { num, den: l }.cancel()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        for (w, &k) in rhs.den.iter() {
            *den.entry(*w).or_insert(0) += k;
        }
        RationalFunction { num, den }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn t(i: usize, e: i32) -> Monomial {
        Monomial::from_exps(&[(i, e)])
    }

    #[test]
    fn orientation_is_value_preserving() {
        // 1/(1-t) == -t^-1/(1-t^-1)
        let a = RationalFunction::inv_one_minus(t(0, 1)).unwrap();
        let b = RationalFunction::from_parts(-&LaurentPoly::monomial(t(0, -1)), &[t(0, -1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denominator().keys().next().unwrap(), &t(0, -1));
    }

    #[test]
    fn sum_cancels() {
        // 1/(1-t) - t/(1-t) = 1
        let a = RationalFunction::inv_one_minus(t(0, 1)).unwrap();
        let b = a.mul_monomial(t(0, 1));
        let s = &a - &b;
        assert!(s.is_polynomial());
        assert_eq!(s, RationalFunction::one());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        // 1/(1-t) == (1+t)/(1-t^2)
        let a = RationalFunction::inv_one_minus(t(0, 1)).unwrap();
        let b = RationalFunction::from_parts(LaurentPoly::one() + LaurentPoly::monomial(t(0, 1)), &[t(0, 2)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, RationalFunction::inv_one_minus(t(0, 2)).unwrap());
    }

    #[test]
    fn signed_substitution_in_denominator() {
        // 1/(1-x) at x -> -y  gives 1/(1+y)
        let a = RationalFunction::inv_one_minus(t(0, 1)).unwrap();
        let s = Subst::new().set(0, rat(-1), t(1, 1));
        let b = a.substitute(&s).unwrap();
        let one_plus_y = RationalFunction::from_poly(LaurentPoly::one() + LaurentPoly::monomial(t(1, 1)));
        assert_eq!(&b * &one_plus_y, RationalFunction::one());
    }

    #[test]
    fn substitution_onto_one_is_a_pole() {
        let a = RationalFunction::inv_one_minus(t(0, 1) * t(1, -1)).unwrap();
        let s = Subst::new().to(0, t(1, 1));
        assert!(matches!(a.substitute(&s), Err(Error::Pole(_))));
    }

    #[test]
    fn degenerate() {
        assert_eq!(RationalFunction::inv_one_minus(Monomial::ONE).unwrap_err(), Error::DegenerateFactor);
    }
}
