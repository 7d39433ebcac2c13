use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, LaurentPoly, Monomial, RationalFunction, TruncatedSeries, VarTable};
use crate::characters::{ahat, Character, T1, T2, T3};
use crate::par;
use crate::partitions::{enumerate_3d, Partition2D, Partition3D};
use crate::report::Report;
use crate::{Error, Result};

/// Slot of the box-counting variable next to `t1, t2, t3`.
pub const QV: usize = 3;

pub fn nekrasov_vars() -> VarTable {
    VarTable::new(&[("t1", false), ("t2", false), ("t3", false), ("Q", true)])
}

/// `O_π - O_π^∨ κ - O_π O_π^∨ (1-t1)(1-t2)(1-t3)` with `O_π = Σ t^{-b}`.
pub fn vertex_character_finite(pi: &Partition3D) -> Result<Character> {
    if pi.legs().iter().any(|l| !l.is_empty()) {
        return Err(Error::Domain(String::from("finite vertex character needs empty legs")));
    }
    let o = LaurentPoly::from_terms(
        pi.extra()
            .iter()
            .map(|b| (Monomial::from_exps(&[(T1, -(b[0] as i32)), (T2, -(b[1] as i32)), (T3, -(b[2] as i32))]), rat(1))),
    );
    let od = o.map_monomials(|m| m.inv());
    let cube = LaurentPoly::one()
        .mul_one_minus(Monomial::var(T1))
        .mul_one_minus(Monomial::var(T2))
        .mul_one_minus(Monomial::var(T3));
    let v = &(&o - &od.mul_monomial(Character::kappa())) - &(&(&o * &od) * &cube);
    Character::new(v)
}

type RfSeries = TruncatedSeries<RationalFunction>;

fn template(n: u32) -> Vec<Grading> {
    alloc::vec![Grading::degree(&[QV], n as i64)]
}

/// `Σ_{n ≤ N} (-Q)^n Σ_{|π| = n} â(V_π)`.
pub fn nekrasov_box_side(max_n: u32) -> Result<RfSeries> {
    let e = Partition2D::empty();
    let pis = enumerate_3d([e.clone(), e.clone(), e], max_n as i64);
    let vals: Vec<Result<(usize, RationalFunction)>> = par::map_collect(pis, |pi| {
        let v = vertex_character_finite(&pi)?;
        Ok((pi.extra().len(), ahat(&v)?))
    });
    let mut by_n: Vec<Vec<RationalFunction>> = (0..=max_n).map(|_| Vec::new()).collect();
    for r in vals {
        let (n, f) = r?;
        by_n[n].push(if n % 2 == 0 { f } else { f.scale(&rat(-1)) });
    }
    let terms = by_n.into_iter().enumerate().map(|(n, fs)| {
        use crate::algebra::Coef;
        (Monomial::from_exps(&[(QV, n as i32)]), RationalFunction::sum_many(fs))
    });
    Ok(RfSeries::from_terms(&template(max_n), terms))
}

/// `Sym(-Q/((1-Qκ^{1/2})(1-Qκ^{-1/2})) ∏_k (κ^{1/2} t_k⁻¹ - κ^{-1/2})/(1-t_k⁻¹))`.
pub fn nekrasov_closed_form(max_n: u32) -> Result<RfSeries> {
    let g = template(max_n);
    let hk = Monomial::doubled(&[(T1, 1), (T2, 1), (T3, 1)]);
    let mut num = LaurentPoly::one();
    let mut den = Vec::new();
    for k in [T1, T2, T3] {
        let tk = Monomial::var(k);
        let f = &LaurentPoly::monomial(hk * tk.inv()) - &LaurentPoly::monomial(hk.inv());
        num = &num * &f;
        den.push(tk.inv());
    }
    let single = RationalFunction::from_parts(num, &den)?;
    let q = Monomial::var(QV);
    // κ^{±1/2} go into coefficients so keys are pure powers of Q
    let arg = RfSeries::term(&g, q, RationalFunction::constant(rat(-1)))
        .mul(&RfSeries::geometric(&g, RationalFunction::monomial(hk), q)?)
        .mul(&RfSeries::geometric(&g, RationalFunction::monomial(hk.inv()), q)?)
        .scale(&single);
    arg.pleth_exp()
}

pub fn nekrasov_check(max_n: u32) -> Result<Report> {
    let a = nekrasov_box_side(max_n)?;
    let b = nekrasov_closed_form(max_n)?;
    let mut r = Report::new(&format!("point-count generating function to Q^{}", max_n));
    r.checked = max_n as usize + 1;
    if let Some((m, x, y)) = a.first_difference(&b) {
        let v = nekrasov_vars();
        r.fail(m.fmt_with(&v), x.fmt_with(&v), y.fmt_with(&v));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_box_character() {
        let pi = Partition3D::new([Partition2D::empty(), Partition2D::empty(), Partition2D::empty()], alloc::vec![[0, 0, 0]]).unwrap();
        let v = vertex_character_finite(&pi).unwrap();
        let t = |e: [i32; 3]| LaurentPoly::monomial(Monomial::from_exps(&[(T1, e[0]), (T2, e[1]), (T3, e[2])]));
        let want = &(&(&t([1, 0, 0]) + &t([0, 1, 0])) + &t([0, 0, 1]))
            - &(&(&t([1, 1, 0]) + &t([1, 0, 1])) + &t([0, 1, 1]));
        assert_eq!(v.poly(), &want);
    }

    #[test]
    fn empty_and_two_boxes() {
        let e = Partition2D::empty();
        let legs = [e.clone(), e.clone(), e];
        assert!(vertex_character_finite(&Partition3D::minimal(legs.clone())).unwrap().is_zero());
        let pi = Partition3D::new(legs, alloc::vec![[0, 0, 0], [1, 0, 0]]).unwrap();
        assert!(vertex_character_finite(&pi).unwrap().serre_check());
    }

    #[test]
    fn low_orders_agree() {
        for n in 0..=3 {
            let r = nekrasov_check(n).unwrap();
            assert!(r.passed, "{}", r);
        }
    }
}
