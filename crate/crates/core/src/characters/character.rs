use alloc::string::String;
use core::fmt;

use crate::algebra::{LaurentPoly, Monomial, VarTable};
use crate::{Error, Result};

pub const T1: usize = 0;
pub const T2: usize = 1;
pub const T3: usize = 2;

pub fn char_vars() -> VarTable {
    VarTable::new(&[("t1", false), ("t2", false), ("t3", false)])
}

/// A virtual character in `t1, t2, t3` with integer multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character(LaurentPoly);

impl Character {
    pub fn new(p: LaurentPoly) -> Result<Self> {
        if p.terms().any(|(_, c)| !c.is_integer()) {
            return Err(Error::Domain(String::from("character multiplicities must be integers")));
        }
        Ok(Character(p))
    }

    pub fn zero() -> Self {
        Character(LaurentPoly::zero())
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.0
    }

    pub fn kappa() -> Monomial {
        Monomial::from_exps(&[(T1, 1), (T2, 1), (T3, 1)])
    }

    /// Integer multiplicity of each weight.
    pub fn weights(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.0.terms().map(|(m, c)| {
            let n = c.to_integer();
            (*m, i64::try_from(&n).expect("multiplicity fits in i64"))
        })
    }

    pub fn dual(&self) -> Self {
        Character(self.0.map_monomials(|m| m.inv()))
    }

    /// `V = -V^∨ κ`.
    pub fn serre_check(&self) -> bool {
        let rhs = -(self.dual().0.mul_monomial(Self::kappa()));
        self.0 == rhs
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl core::ops::Add for &Character {
    type Output = Character;
    fn add(self, o: &Character) -> Character {
        Character(&self.0 + &o.0)
    }
}

impl core::ops::Sub for &Character {
    type Output = Character;
    fn sub(self, o: &Character) -> Character {
        Character(&self.0 - &o.0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_with(&char_vars()))
    }
}
