use alloc::vec::Vec;

use crate::algebra::{Grading, LaurentPoly, Monomial, RationalFunction};
use crate::par::map_reduce;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::Result;

use super::{Series, M, Y, Z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    /// `Σ z^n (-m)^k χ(Λ^k)`.
    Lambda,
    /// `Σ z^n y^k χ(Sym^k)`.
    Sym,
}

impl Functor {
    /// The variable counting `k`.
    pub fn var(&self) -> usize {
        match self {
            Functor::Lambda => M,
            Functor::Sym => Y,
        }
    }
}

/// Truncation: `z`-degree at most `z`, degree in the functor variable at most `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TautOrders {
    pub z: u32,
    pub k: u32,
}

pub fn template(f: Functor, o: TautOrders) -> Vec<Grading> {
    alloc::vec![Grading::degree(&[Z], o.z as i64), Grading::degree(&[f.var()], o.k as i64)]
}

fn at(w: &[Monomial; 2], e1: i64, e2: i64) -> Monomial {
    w[0].pow(e1 as i32) * w[1].pow(e2 as i32)
}

/// `1 / Λ•(T_λ^∨)` with the plane's axes scaled by `w`.
pub fn inverse_euler_at(l: &Partition2D, w: &[Monomial; 2]) -> Result<RationalFunction> {
    let mut ws = Vec::new();
    for (_, (a, lg)) in l.arms_legs() {
        ws.push(at(w, -lg, a + 1).inv());
        ws.push(at(w, lg + 1, -a).inv());
    }
    RationalFunction::from_parts(LaurentPoly::one(), &ws)
}

/// `w1^{-b1} w2^{-b2}`, the weight of a box in the tautological fiber.
fn box_weight(w: &[Monomial; 2], b: (u32, u32)) -> Monomial {
    at(w, -(b.0 as i64), -(b.1 as i64))
}

fn fixed_point_sum<F>(n: u32, t: &[Grading], per_box: F, w: &[Monomial; 2], extra: Monomial) -> Result<Series>
where
    F: Fn(Monomial) -> Result<Series> + Sync + Send,
{
    let zero = Ok(Series::zero(t).truncated(t));
    map_reduce(
        partitions_up_to(n),
        zero,
        |l| {
            let mut s = Series::constant(t, inverse_euler_at(&l, w)?);
            for b in l.boxes() {
                s = s.mul(&per_box(box_weight(w, b))?);
            }
            Ok(s.shift(extra.pow(l.size() as i32)))
        },
        |a, b| Ok(a?.add(&b?)),
    )
}

/// `Σ_λ z^{|λ|}/Λ•(T_λ^∨) ∏_□ ∏_i (1 - m l_i w^{-b})`: exterior powers of the
/// tautological bundle of `⊕ O(l_i)` on the plane.
pub fn chi_lambda_c2(l: &[Monomial], w: [Monomial; 2], o: TautOrders) -> Result<Series> {
    let t = template(Functor::Lambda, o);
    let per_box = |x: Monomial| {
        let mut s = Series::one(&t);
        for li in l {
            let f = Series::from_terms(&t, [(Monomial::ONE, RationalFunction::one()), (Monomial::var(M), -RationalFunction::monomial(*li * x))]);
            s = s.mul(&f);
        }
        Ok(s)
    };
    fixed_point_sum(o.z, &t, per_box, &w, Monomial::var(Z))
}

/// Symmetric powers: each box contributes `∏_i 1/(1 - y l_i w^{-b})`.
pub fn chi_sym_c2(l: &[Monomial], w: [Monomial; 2], o: TautOrders) -> Result<Series> {
    let t = template(Functor::Sym, o);
    let per_box = |x: Monomial| {
        let mut s = Series::one(&t);
        for li in l {
            s = s.mul(&Series::geometric(&t, RationalFunction::monomial(*li * x), Monomial::var(Y))?);
        }
        Ok(s)
    };
    fixed_point_sum(o.z, &t, per_box, &w, Monomial::var(Z))
}

/// `Σ_λ (y l)^{|λ|}/Λ•(T_λ^∨) ∏_□ (1 - z w^{-b}) / (-w^{b})`, the part of the
/// symmetric-power series left after the plethystic factor. `o.k` bounds `y`.
pub fn g_c2(l: Monomial, w: [Monomial; 2], o: TautOrders) -> Result<Series> {
    let t = template(Functor::Sym, o);
    let per_box = |x: Monomial| {
        // x = w^{-b}, so 1/(-w^b) = -x
        let c = -RationalFunction::monomial(x);
        Ok(Series::from_terms(&t, [(Monomial::ONE, c.clone()), (Monomial::var(Z), -(c.mul_monomial(x)))]))
    };
    let s = fixed_point_sum(o.k, &t, per_box, &w, Monomial::var(Y))?;
    // (y l)^{|λ|}: l rides along in the coefficients
    let mut out = Series::zero(&t).truncated(&t);
    for (m, c) in s.terms() {
        let k = m.get(Y) / 2;
        out = out.add(&Series::term(&t, *m, c.mul_monomial(l.pow(k))));
    }
    Ok(out)
}
