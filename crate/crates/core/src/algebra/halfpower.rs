use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::rational::rat;
use super::series::{Coef, Grading, TruncatedSeries};
use crate::{Error, Result};

/// Variable slots for the change `t^a q^b -> (-1)^(a-b) Q^(a+b) κ^((a-b)/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfPowerVars {
    pub t: usize,
    pub q: usize,
    pub big_q: usize,
    pub kappa: usize,
}

fn convert_monomial(m: &Monomial, v: &HalfPowerVars) -> Result<(bool, Monomial)> {
    // doubled exponents: 2a, 2b
    let (a2, b2) = (m.get(v.t), m.get(v.q));
    if (a2 - b2) % 2 != 0 {
        return Err(Error::Lattice(alloc::format!("t^{}/2 q^{}/2 has a-b outside Z", a2, b2)));
    }
    let diff = (a2 - b2) / 2;
    let mut out = *m;
    out.0[v.t] = 0;
    out.0[v.q] = 0;
    out.0[v.big_q] += a2 + b2;
    out.0[v.kappa] += diff;
    Ok((diff % 2 != 0, out))
}

pub fn half_power_convert(p: &LaurentPoly, v: &HalfPowerVars) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let (neg, k) = convert_monomial(m, v)?;
        out.add_term(k, if neg { -c.clone() } else { c.clone() });
    }
    Ok(out)
}

/// Series version; `template` gives the gradings of the result, which the
/// caller must pick so that the Q-degree bound matches the (t,q) one. Floors
/// are read off the surviving terms; use `with_floor` to certify more.
pub fn half_power_convert_series<C: Coef>(
    s: &TruncatedSeries<C>,
    v: &HalfPowerVars,
    template: &[Grading],
) -> Result<TruncatedSeries<C>> {
    let mut terms = alloc::vec::Vec::new();
    for (m, c) in s.terms() {
        let (neg, k) = convert_monomial(m, v)?;
        terms.push((k, if neg { c.scale(&rat(-1)) } else { c.clone() }));
    }
    Ok(TruncatedSeries::from_terms(template, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_and_q() {
        let v = HalfPowerVars { t: 0, q: 1, big_q: 2, kappa: 3 };
        let t = LaurentPoly::monomial(Monomial::var(0));
        let got = half_power_convert(&t, &v).unwrap();
        // t -> -Q κ^{1/2}
        let want = LaurentPoly::term(rat(-1), Monomial::doubled(&[(2, 2), (3, 1)]));
        assert_eq!(got, want);
        let tq = LaurentPoly::monomial(Monomial::from_exps(&[(0, 1), (1, 1)]));
        assert_eq!(half_power_convert(&tq, &v).unwrap(), LaurentPoly::monomial(Monomial::from_exps(&[(2, 2)])));
        let bad = LaurentPoly::monomial(Monomial::doubled(&[(0, 1)]));
        assert!(half_power_convert(&bad, &v).is_err());
    }
}
