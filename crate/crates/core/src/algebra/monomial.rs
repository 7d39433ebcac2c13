use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Div, Mul};

use super::vars::VarTable;
use crate::{Error, Result};

pub const MAX_VARS: usize = 10;

/// A Laurent monomial. Entry `i` is twice the exponent of variable `i`, so odd
/// entries are genuine half-integer powers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(pub [i32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn one() -> Self {
        Self::ONE
    }

    /// The variable itself, exponent 1.
    pub fn var(i: usize) -> Self {
        Self::doubled(&[(i, 2)])
    }

    /// Builds from (index, doubled exponent) pairs.
    pub fn doubled(pairs: &[(usize, i32)]) -> Self {
        let mut m = Self::ONE;
        for &(i, e) in pairs {
            m.0[i] += e;
        }
        m
    }

    /// Builds from (index, integer exponent) pairs.
    pub fn from_exps(pairs: &[(usize, i32)]) -> Self {
        let mut m = Self::ONE;
        for &(i, e) in pairs {
            m.0[i] += 2 * e;
        }
        m
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inv(&self) -> Self {
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e = -*e;
        }
        m
    }

    pub fn pow(&self, k: i32) -> Self {
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e *= k;
        }
        m
    }

    /// Square root on the doubled lattice; needs every entry even.
    pub fn sqrt(&self) -> Result<Self> {
        if self.0.iter().any(|e| e % 2 != 0) {
            return Err(Error::Lattice(format!("no square root of {:?}", self.0)));
        }
        let mut m = *self;
        for e in m.0.iter_mut() {
            *e /= 2;
        }
        Ok(m)
    }

    pub fn weighted(&self, w: &[i64; MAX_VARS]) -> i64 {
        self.0.iter().zip(w.iter()).map(|(&e, &c)| e as i64 * c).sum()
    }

    /// Keeps only the listed variables.
    pub fn project(&self, keep: &[usize]) -> Self {
        let mut m = Self::ONE;
        for &i in keep {
            m.0[i] = self.0[i];
        }
        m
    }

    /// Zeroes the listed variables.
    pub fn drop_vars(&self, drop: &[usize]) -> Self {
        let mut m = *self;
        for &i in drop {
            m.0[i] = 0;
        }
        m
    }

    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut m = *self;
        m.0.swap(a, b);
        m
    }

    /// Graded-lex sort key: total doubled degree, then exponents.
    pub fn grlex_key(&self) -> (i64, [i32; MAX_VARS]) {
        (self.0.iter().map(|&e| e as i64).sum(), self.0)
    }

    pub fn fmt_with(&self, vars: &VarTable) -> String {
        let mut parts: Vec<String> = Vec::new();
        for i in 0..vars.len() {
            let e = self.0[i];
            if e == 0 {
                continue;
            }
            let name = vars.name(i);
            let s = if e == 2 {
                String::from(name)
            } else if e % 2 == 0 {
                format!("{name}^{}", e / 2)
            } else {
                format!("{name}^{e}/2")
            };
            parts.push(s);
        }
        debug_assert!(self.0[vars.len()..].iter().all(|&e| e == 0));
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join("*")
        }
    }

    /// Inverse of `fmt_with`.
    pub fn parse_with(s: &str, vars: &VarTable) -> Option<Self> {
        let s = s.trim();
        let mut m = Self::ONE;
        if s == "1" {
            return Some(m);
        }
        for part in s.split('*') {
            let (name, e) = match part.split_once('^') {
                None => (part, 2),
                Some((n, e)) => match e.split_once('/') {
                    Some((num, "2")) => (n, num.parse::<i32>().ok()?),
                    Some(_) => return None,
                    None => (n, 2 * e.parse::<i32>().ok()?),
                },
            };
            m.0[vars.index(name)?] += e;
        }
        Some(m)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    // Multiplying monomials adds exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(mut self, rhs: Monomial) -> Monomial {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += *b;
        }
        self
    }
}

impl Div for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(mut self, rhs: Monomial) -> Monomial {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= *b;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_parse() {
        let v = VarTable::new(&[("t", false), ("q", false), ("Q", true)]);
        let m = Monomial::doubled(&[(0, 1), (1, -4), (2, 6)]);
        let s = m.fmt_with(&v);
        assert_eq!(s, "t^1/2*q^-2*Q^3");
        assert_eq!(Monomial::parse_with(&s, &v), Some(m));
        assert_eq!(Monomial::ONE.fmt_with(&v), "1");
    }

    #[test]
    fn sqrt_needs_even() {
        assert!(Monomial::doubled(&[(0, 1)]).sqrt().is_err());
        assert_eq!(Monomial::doubled(&[(0, 2)]).sqrt().unwrap(), Monomial::doubled(&[(0, 1)]));
    }
}
