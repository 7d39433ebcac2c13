use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Pow, Zero};

use super::monomial::{Monomial, MAX_VARS};
use super::rational::{rat, Rational};
use crate::{Error, Result};

/// A monomial substitution: variable `i` goes to `c * M`. A zero image sets
/// the variable to 0 (legal only where it appears with exponent >= 0).
#[derive(Clone, Debug, Default)]
pub struct Subst {
    images: Vec<Option<(Rational, Monomial)>>,
}

impl Subst {
    pub fn new() -> Self {
        Subst { images: vec![None; MAX_VARS] }
    }

    pub fn set(mut self, var: usize, coeff: Rational, image: Monomial) -> Self {
        self.images[var] = Some((coeff, image));
        self
    }

    pub fn to(self, var: usize, image: Monomial) -> Self {
        self.set(var, Rational::one(), image)
    }

    pub fn zero(self, var: usize) -> Self {
        self.set(var, Rational::zero(), Monomial::ONE)
    }

    /// Exchanges two variables.
    pub fn swap(self, a: usize, b: usize) -> Self {
        self.to(a, Monomial::var(b)).to(b, Monomial::var(a))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|i| i.is_none())
    }

    /// Image of a monomial as `coeff * monomial`.
    pub fn apply(&self, m: &Monomial) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut out = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            match &self.images[i] {
                None => out.0[i] += e,
                Some((c, img)) => {
                    if c.is_zero() {
                        if e < 0 {
                            return Err(Error::Pole(format!("variable {i} set to 0 in a negative power")));
                        }
                        return Ok((Rational::zero(), Monomial::ONE));
                    }
                    if e % 2 == 0 {
                        let k = e / 2;
                        coeff *= pow_signed(c, k);
                        out = out * img.pow(k);
                    } else {
                        if !c.is_one() {
                            return Err(Error::Lattice(format!(
                                "half power of variable {i} under a signed image"
                            )));
                        }
                        out = out * img.pow(e).sqrt()?;
                    }
                }
            }
        }
        Ok((coeff, out))
    }
}

fn pow_signed(c: &Rational, k: i32) -> Rational {
    if k >= 0 {
        Pow::pow(c.clone(), k as u32)
    } else {
        rat(1) / Pow::pow(c.clone(), (-k) as u32)
    }
}
