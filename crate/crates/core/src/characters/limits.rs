use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rat, LaurentPoly, Monomial, RationalFunction};
use crate::{Error, Result};

use super::character::Character;
use super::slope::{Attraction, SlopeRegime};

/// Signed count of attracting weights, `Σ c_w [w attracting]`.
pub fn index(v: &Character, sigma: &SlopeRegime) -> Result<i64> {
    let mut ind = 0;
    for (w, c) in v.weights() {
        match sigma.sign(&w) {
            Attraction::Attracting => ind += c,
            Attraction::Repelling => {}
            Attraction::Fixed => {
                return Err(Error::NonGeneric(format!("weight {:?} is fixed by {}", w.0, sigma)));
            }
        }
    }
    Ok(ind)
}

fn sqrt_kappa() -> Monomial {
    Monomial::doubled(&[(0, 1), (1, 1), (2, 1)])
}

/// `(-κ^{1/2})^{index}` as a Laurent polynomial in the `t_i`.
pub fn rigid_limit(v: &Character, sigma: &SlopeRegime) -> Result<LaurentPoly> {
    let ind = index(v, sigma)?;
    let sign = if ind % 2 == 0 { rat(1) } else { rat(-1) };
    Ok(LaurentPoly::term(sign, sqrt_kappa().pow(ind as i32)))
}

/// `∏_w (w^{1/2} - w^{-1/2})^{-c_w}`.
pub fn ahat(v: &Character) -> Result<RationalFunction> {
    let mut num = LaurentPoly::one();
    let mut den: Vec<Monomial> = Vec::new();
    for (w, c) in v.weights() {
        if w.is_one() {
            return Err(Error::Pole(alloc::string::String::from("trivial weight in â")));
        }
        // w^{1/2} - w^{-1/2} = -w^{-1/2} (1 - w)
        let h = w.sqrt()?;
        if c > 0 {
            for _ in 0..c {
                num = num.mul_monomial(h).scale(&rat(-1));
                den.push(w);
            }
        } else {
            for _ in 0..(-c) {
                num = num.mul_monomial(h.inv()).scale(&rat(-1)).mul_one_minus(w);
            }
        }
    }
    RationalFunction::from_parts(num, &den)
}

/// `lim_{z→0} f(σ(z) t)`, where `σ(z)` scales each `t_i` by `z^{r_i}`.
/// Denominator factors on fixed weights survive; a surviving negative
/// power of `z` is reported as divergence.
pub fn balanced_limit(f: &RationalFunction, sigma: &SlopeRegime) -> Result<RationalFunction> {
    let f = f.clone().cancel();
    let mut num = f.numerator().clone();
    let mut fixed: Vec<Monomial> = Vec::new();
    for (w, &k) in f.denominator().iter() {
        match sigma.sign(w) {
            Attraction::Attracting => {}
            Attraction::Repelling => {
                // 1/(1-w) = -w^{-1}/(1-w^{-1}), and 1-w^{-1} → 1
                for _ in 0..k {
                    num = num.mul_monomial(w.inv()).scale(&rat(-1));
                }
            }
            Attraction::Fixed => {
                for _ in 0..k {
                    fixed.push(*w);
                }
            }
        }
    }
    let zero = (0, 0);
    if let Some((m, _)) = num.terms().find(|(m, _)| sigma.grade(m) < zero) {
        return Err(Error::Divergent(format!("term {:?} blows up under {}", m.0, sigma)));
    }
    let lead = num.filter(|m| sigma.grade(m) == zero);
    Ok(RationalFunction::from_parts(lead, &fixed)?.cancel())
}
