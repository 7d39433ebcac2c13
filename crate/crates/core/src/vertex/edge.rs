use alloc::format;

use crate::algebra::{rat, LaurentPoly, Monomial};
use crate::characters::{index, Character, SlopeRegime, T1, T2, T3};
use crate::partitions::Partition2D;
use crate::{Error, Result};

use super::refined::{VQ, VT};

/// Normal bundle degrees `(l, l')` of a torus-fixed curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeKind(pub i64, pub i64);

impl EdgeKind {
    pub const CONIFOLD: EdgeKind = EdgeKind(-1, -1);
    pub const SURFACE: EdgeKind = EdgeKind(0, -2);
}

/// `Σ_□ x^{-l} y^{a+1} + x^{l+1} y^{-a}`.
pub fn tangent_pair(lambda: &Partition2D, x: Monomial, y: Monomial) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (_, (a, l)) in lambda.arms_legs() {
        p.add_term(x.pow(-(l as i32)) * y.pow(a as i32 + 1), rat(1));
        p.add_term(x.pow(l as i32 + 1) * y.pow(-(a as i32)), rat(1));
    }
    p
}

/// Regularized edge term along axis `k` (0-based) with weights `w`:
/// `T_λ(w_{k+1}, w_{k+2})/(1 - w_k⁻¹) + T_{λᵗ}(w_k^{-l'} w_{k+2}, w_k^{-l} w_{k+1})/(1 - w_k)`.
pub fn edge_character(lambda: &Partition2D, kind: EdgeKind, w: [Monomial; 3], k: usize) -> Result<Character> {
    let (wk, w1, w2) = (w[k % 3], w[(k + 1) % 3], w[(k + 2) % 3]);
    let first = tangent_pair(lambda, w1, w2);
    let second = tangent_pair(
        &lambda.conjugate(),
        wk.pow(-(kind.1 as i32)) * w2,
        wk.pow(-(kind.0 as i32)) * w1,
    );
    // first/(1 - w⁻¹) = -w·first/(1 - w)
    let num = &second - &first.mul_monomial(wk);
    let p = num
        .div_one_minus(&wk)
        .ok_or_else(|| Error::Invariant(format!("edge term for {} does not reduce to a Laurent polynomial", lambda)))?;
    Character::new(p)
}

/// `χ(λ, (l, l')) = Σ_□ (1 - l·b1 - l'·b2)`.
pub fn edge_euler(lambda: &Partition2D, kind: EdgeKind) -> i64 {
    lambda.boxes().map(|(b1, b2)| 1 - kind.0 * b1 as i64 - kind.1 * b2 as i64).sum()
}

/// The partition fed to [`edge_character`] for an edge labelled `λ` in the
/// limit tables. Conifold tables are stated for the transposed labelling
/// (equivalently, with the two normal directions swapped); the surface table,
/// which is not symmetric in them, uses `λ` itself. Fixed by comparing every
/// row with [`edge_limit_exact`].
pub fn table_label(lambda: &Partition2D, kind: EdgeKind) -> Partition2D {
    if kind == EdgeKind::CONIFOLD {
        lambda.conjugate()
    } else {
        lambda.clone()
    }
}

/// `Q^χ (-κ^{1/2})^{ind}` of the exact edge term along axis 1 for the
/// tabulated label `λ`, as `t^a q^b`; works for any generic regime.
pub fn edge_limit_exact(lambda: &Partition2D, kind: EdgeKind, sigma: &SlopeRegime) -> Result<Monomial> {
    let lab = table_label(lambda, kind);
    let w = [Monomial::var(T1), Monomial::var(T2), Monomial::var(T3)];
    let e = edge_character(&lab, kind, w, 0)?;
    let ind = index(&e, sigma)?;
    let chi = edge_euler(&lab, kind);
    // half-integer exponents are read with t^{1/2} q^{1/2} = Q
    Ok(tq(chi + ind, chi - ind))
}

fn tq(a2: i64, b2: i64) -> Monomial {
    Monomial::doubled(&[(VT, a2 as i32), (VQ, b2 as i32)])
}

/// Tabulated preferred limit of the edge term along axis 1, as `t^a q^b`.
/// Regimes missing from a table are answered by negation, which swaps `t`
/// and `q`.
pub fn edge_limit(lambda: &Partition2D, kind: EdgeKind, sigma: &SlopeRegime) -> Result<Monomial> {
    let (p, k, s) = match *sigma {
        SlopeRegime::Preferred { primary, tertiary, tertiary_sign, .. } => (primary, tertiary, tertiary_sign),
        _ => return Err(Error::Table(format!("edge limits need a preferred regime, got {}", sigma))),
    };
    let n = lambda.size() as i64;
    let a = lambda.norm2() as i64;
    let b = lambda.conjugate().norm2() as i64;
    // doubled exponents of t and q
    let row = |p: usize, k: usize, s: i8| -> Option<(i64, i64)> {
        match kind {
            EdgeKind::CONIFOLD => match (p, k, s) {
                (0, 1, 1) | (1, 0, 1) | (1, 2, 1) => Some((b, a)),
                (0, 2, 1) | (2, 0, 1) | (2, 1, 1) => Some((a, b)),
                _ => None,
            },
            EdgeKind::SURFACE => match (p, k, s) {
                (0, 1, 1) => Some((a + n, a - n)),
                (1, 0, 1) | (1, 0, -1) => Some((2 * a, 0)),
                (0, 1, -1) => Some((a - n, a + n)),
                (2, 1, -1) => Some((a - n, a + n)),
                (2, 0, -1) | (2, 0, 1) => Some((0, 2 * a)),
                (2, 1, 1) => Some((a + n, a - n)),
                _ => None,
            },
            _ => None,
        }
    };
    if let Some((x, y)) = row(p, k, s) {
        return Ok(tq(x, y));
    }
    if let SlopeRegime::Preferred { primary, tertiary, tertiary_sign, .. } = sigma.negate() {
        if let Some((x, y)) = row(primary, tertiary, tertiary_sign) {
            return Ok(tq(y, x));
        }
    }
    Err(Error::Table(format!("no edge limit for kind ({},{}) under {}", kind.0, kind.1, sigma)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_w() -> [Monomial; 3] {
        [Monomial::var(T1), Monomial::var(T2), Monomial::var(T3)]
    }

    #[test]
    fn single_box_conifold_edge_vanishes() {
        let e = edge_character(&Partition2D::of(&[1]), EdgeKind::CONIFOLD, std_w(), 0).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn single_box_surface_edge() {
        let e = edge_character(&Partition2D::of(&[1]), EdgeKind::SURFACE, std_w(), 0).unwrap();
        let want = LaurentPoly::monomial(Monomial::var(T2)) - LaurentPoly::monomial(Monomial::from_exps(&[(T1, 1), (T3, 1)]));
        assert_eq!(e.poly(), &want);
        assert!(e.serre_check());
    }

    #[test]
    fn conifold_euler_characteristic() {
        for n in 0..=5 {
            for l in crate::partitions::partitions_of(n) {
                let want = (l.norm2() + l.conjugate().norm2()) as i64 / 2;
                assert_eq!(edge_euler(&l, EdgeKind::CONIFOLD), want);
            }
        }
    }

    #[test]
    fn table_examples() {
        let one = Partition2D::of(&[1]);
        let s = SlopeRegime::parse("r1>>r2>0>>r3").unwrap();
        assert_eq!(edge_limit(&one, EdgeKind::CONIFOLD, &s).unwrap(), Monomial::doubled(&[(VT, 1), (VQ, 1)]));
        let s = SlopeRegime::parse("r2>>r1>0>>r3").unwrap();
        assert_eq!(edge_limit(&one, EdgeKind::SURFACE, &s).unwrap(), Monomial::var(VT));
        let l = Partition2D::of(&[2, 1]);
        let s = SlopeRegime::parse("r3>>r1>0>>r2").unwrap();
        assert_eq!(edge_limit(&l, EdgeKind::SURFACE, &s).unwrap(), Monomial::from_exps(&[(VQ, 5)]));
        let s = SlopeRegime::parse("r1>>r3>0>>r2").unwrap();
        assert!(matches!(edge_limit(&l, EdgeKind::SURFACE, &s), Err(Error::Table(_))));
    }
}
