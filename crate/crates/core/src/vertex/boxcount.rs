use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rat, LaurentPoly, Monomial};
use crate::characters::{index, Attraction, Character, SlopeRegime, T1, T2, T3};
use crate::par;
use crate::partitions::{enumerate_3d, Box3, Partition2D, Partition3D};
use crate::{Error, Result};

use super::refined::{tq_template, VQ, VT};
use super::schur::Series;

fn tinv(k: usize) -> Monomial {
    Monomial::from_exps(&[(k, -1)])
}

/// `ψ_ν` of a box: depends only on `b2 - b1` relative to the corners of `ν`.
pub fn psi_nu(nu: &Partition2D, b: &Box3) -> Monomial {
    let d = b[1] as i64 - b[0] as i64;
    let c = nu.corners();
    if c.inner.contains(&d) {
        return Monomial::var(T3);
    }
    if c.outer.contains(&d) {
        return tinv(T3);
    }
    // c⁻_0 > c⁺_1 > c⁻_1 > … > c⁺_d > c⁻_d; above an inner corner (up to the
    // next outer one) gives t2⁻¹, above an outer corner gives t1⁻¹
    if d > c.inner[0] {
        return tinv(T2);
    }
    for i in 1..c.inner.len() {
        if c.outer[i - 1] > d && d > c.inner[i] {
            return tinv(T2);
        }
    }
    tinv(T1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tq {
    T,
    Q,
}

fn check_regime(sigma: &SlopeRegime) -> Result<()> {
    match sigma {
        SlopeRegime::Preferred { tertiary: 2, .. } => Ok(()),
        _ => Err(Error::Domain(format!("box counting needs a preferred regime with tertiary axis 3, got {}", sigma))),
    }
}

/// `Ψ^σ_ν`: `t` where `ψ_ν` attracts, `q` where it repels.
pub fn psi_sigma(nu: &Partition2D, b: &Box3, sigma: &SlopeRegime) -> Result<Tq> {
    check_regime(sigma)?;
    match sigma.sign(&psi_nu(nu, b)) {
        Attraction::Attracting => Ok(Tq::T),
        Attraction::Repelling => Ok(Tq::Q),
        Attraction::Fixed => Err(Error::Invariant(format!("ψ fixed by {}", sigma))),
    }
}

/// Beyond this many steps off the diagonal, `ψ_ν = ψ_∅` and no leg meets another.
fn cutoff(pi: &Partition3D) -> u32 {
    let nu = &pi.legs()[2];
    pi.extent() + nu.length() as u32 + nu.part(1) + 2
}

/// Boxes of legs 1 and 2 with first/second coordinate up to `m`, plus extras.
fn relevant_boxes(pi: &Partition3D, m: u32) -> BTreeSet<Box3> {
    let legs = pi.legs();
    let mut out: BTreeSet<Box3> = pi.extra().iter().copied().collect();
    for (x, y) in legs[0].boxes() {
        for b in 0..=m {
            out.insert([b, x, y]);
        }
    }
    for (x, y) in legs[1].boxes() {
        for b in 0..=m {
            out.insert([y, b, x]);
        }
    }
    out
}

/// `W_π = Σ_□ (ψ_{π⁽³⁾} - δ1 ψ_∅ - δ2 ψ_∅ - δ3 ψ_{π⁽³⁾})`; only boxes outside
/// leg 3 alone contribute.
pub fn w_char(pi: &Partition3D) -> Character {
    let nu = &pi.legs()[2];
    let empty = Partition2D::empty();
    let mut w = LaurentPoly::zero();
    for b in relevant_boxes(pi, cutoff(pi)) {
        let [d1, d2, d3] = pi.leg_membership(&b);
        let pn = psi_nu(nu, &b);
        let pe = psi_nu(&empty, &b);
        let mut c = 1 - d3 as i64;
        w.add_term(pn, rat(c));
        c = d1 as i64 + d2 as i64;
        w.add_term(pe, rat(-c));
    }
    Character::new(w).expect("integer multiplicities")
}

fn kappa_dual(w: &Character) -> Character {
    let k = Character::kappa();
    Character::new(w.dual().poly().mul_monomial(k)).expect("integer multiplicities")
}

/// `t^a q^b` with `a + b = χ`, `a - b = ind`, read with `t^{1/2} q^{1/2} = Q`.
fn tq_monomial(chi: i64, ind: i64) -> Monomial {
    Monomial::doubled(&[(VT, (chi + ind) as i32), (VQ, (chi - ind) as i32)])
}

/// Which route evaluates a single configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxRoute {
    /// `Q^χ (-κ^{1/2})^{ind(W - κ W^∨)}`.
    Index,
    /// Product of `Ψ` over a diagonal band, divided by the leg products.
    Product,
}

/// Contribution `Q^{χ(π)} â(V_π)^σ` as a monomial in `t, q`.
pub fn box_term(pi: &Partition3D, sigma: &SlopeRegime, route: BoxRoute) -> Result<Monomial> {
    check_regime(sigma)?;
    match route {
        BoxRoute::Index => {
            let w = w_char(pi);
            let v = &w - &kappa_dual(&w);
            Ok(tq_monomial(pi.renorm_volume(), index(&v, sigma)?))
        }
        BoxRoute::Product => {
            let n0 = cutoff(pi);
            let a = band_product(pi, sigma, n0)?;
            let b = band_product(pi, sigma, n0 + 1)?;
            if a != b {
                return Err(Error::Invariant(format!("band product not stable at N = {}", n0)));
            }
            let deg = (a.get(VT) + a.get(VQ)) as i64;
            if deg != 2 * pi.renorm_volume() {
                return Err(Error::Invariant(format!("band product has degree {} ≠ 2χ", deg)));
            }
            Ok(a)
        }
    }
}

fn band_product(pi: &Partition3D, sigma: &SlopeRegime, n: u32) -> Result<Monomial> {
    let nu = &pi.legs()[2];
    let empty = Partition2D::empty();
    let in_band = |b: &Box3| (b[1] as i64 - b[0] as i64).abs() <= n as i64;
    let mut m = Monomial::ONE;
    let tq = |x: Tq| if x == Tq::T { Monomial::var(VT) } else { Monomial::var(VQ) };
    for b in relevant_boxes(pi, 2 * n + pi.extent()) {
        if !in_band(&b) {
            continue;
        }
        let [d1, d2, d3] = pi.leg_membership(&b);
        if !d3 {
            m = m * tq(psi_sigma(nu, &b, sigma)?);
        }
        let pe = tq(psi_sigma(&empty, &b, sigma)?);
        if d1 {
            m = m * pe.inv();
        }
        if d2 {
            m = m * pe.inv();
        }
    }
    Ok(m)
}

/// `Σ_{χ(π) ≤ order} Q^{χ(π)} â(V_π)^σ` over configurations with the given legs.
pub fn box_count(legs: [Partition2D; 3], sigma: &SlopeRegime, order: i64, route: BoxRoute) -> Result<Series> {
    check_regime(sigma)?;
    let pis = enumerate_3d(legs, order);
    let terms: Vec<Result<Monomial>> = par::map_collect(pis, |pi| box_term(&pi, sigma, route));
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        out.push((t?, rat(1)));
    }
    Ok(Series::from_terms(&tq_template(order), out))
}

/// Box count divided by the one with empty legs, certified to `order`.
pub fn box_count_normalized(legs: [Partition2D; 3], sigma: &SlopeRegime, order: i64, route: BoxRoute) -> Result<Series> {
    let raw = box_count(legs, sigma, order, route)?;
    let floor = raw.floor(0) / 2;
    let empty = box_count(
        [Partition2D::empty(), Partition2D::empty(), Partition2D::empty()],
        sigma,
        order - floor.min(0),
        route,
    )?;
    let t = tq_template(order);
    Ok(raw.mul(&empty.inv()?).truncated(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[u32]) -> Partition2D {
        Partition2D::of(s)
    }

    #[test]
    fn psi_of_empty_shape() {
        let e = p(&[]);
        assert_eq!(psi_nu(&e, &[0, 0, 0]), Monomial::var(T3));
        assert_eq!(psi_nu(&e, &[0, 1, 0]), tinv(T2));
        assert_eq!(psi_nu(&e, &[1, 0, 0]), tinv(T1));
    }

    #[test]
    fn psi_of_single_box() {
        // ν = (1): c⁻ = (1, -1), c⁺ = (0)
        let n = p(&[1]);
        assert_eq!(psi_nu(&n, &[0, 0, 5]), tinv(T3));
        assert_eq!(psi_nu(&n, &[0, 1, 0]), Monomial::var(T3));
        assert_eq!(psi_nu(&n, &[1, 0, 0]), Monomial::var(T3));
        assert_eq!(psi_nu(&n, &[0, 2, 0]), tinv(T2));
        assert_eq!(psi_nu(&n, &[2, 0, 0]), tinv(T1));
    }

    #[test]
    fn psi_sigma_worked_example() {
        let s = SlopeRegime::parse("r1>>r3>0>>r2").unwrap();
        let e = p(&[]);
        for b1 in 0..4 {
            for b2 in 0..4 {
                let want = if b2 >= b1 { Tq::T } else { Tq::Q };
                assert_eq!(psi_sigma(&e, &[b1, b2, 0], &s).unwrap(), want);
            }
        }
    }

    #[test]
    fn single_box_w() {
        let pi = Partition3D::new([p(&[]), p(&[]), p(&[])], alloc::vec![[0, 0, 0]]).unwrap();
        assert_eq!(w_char(&pi).poly(), &LaurentPoly::monomial(Monomial::var(T3)));
    }

    #[test]
    fn bare_third_leg_has_zero_w() {
        let pi = Partition3D::minimal([p(&[]), p(&[]), p(&[2, 1])]);
        assert!(w_char(&pi).is_zero());
    }

    #[test]
    fn first_leg_with_a_box_is_finite() {
        let pi = Partition3D::minimal([p(&[1]), p(&[]), p(&[])]);
        let extra = pi.addable();
        assert!(!extra.is_empty());
        for b in extra {
            let q = pi.with_box(b);
            let w = w_char(&q);
            // summing over a wider window changes nothing
            let wide = {
                let nu = &q.legs()[2];
                let mut acc = LaurentPoly::zero();
                for bx in relevant_boxes(&q, 3 * cutoff(&q)) {
                    let [d1, d2, d3] = q.leg_membership(&bx);
                    acc.add_term(psi_nu(nu, &bx), rat(1 - d3 as i64));
                    acc.add_term(psi_nu(&Partition2D::empty(), &bx), rat(-(d1 as i64 + d2 as i64)));
                }
                acc
            };
            assert_eq!(w.poly(), &wide);
        }
    }

    #[test]
    fn routes_agree_on_small_cases() {
        let s = SlopeRegime::parse("r1>>r3>0>>r2").unwrap();
        for legs in [[p(&[]), p(&[]), p(&[])], [p(&[1]), p(&[]), p(&[])], [p(&[1]), p(&[1]), p(&[1])]] {
            let a = box_count(legs.clone(), &s, 3, BoxRoute::Index).unwrap();
            let b = box_count(legs, &s, 3, BoxRoute::Product).unwrap();
            assert_eq!(a.first_difference(&b), None);
        }
    }
}
