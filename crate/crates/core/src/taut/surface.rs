use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{rat, LaurentPoly, Monomial, Rational, RationalFunction};
use crate::{Error, Result};

use super::special::{generic_pairs, to_s, value_at_one};
use super::{T1, T2};

/// `(c1(L)², c1(L)c1(S), c1(S)², c2(S))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GammaVector(pub [i64; 4]);

/// Tangent weights at a fixed point and the weights of the bundle's fiber
/// there, one per line-bundle summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub w: [Monomial; 2],
    pub l: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSurfaceData {
    pub label: String,
    pub fixed: Vec<FixedPoint>,
    /// Only for line bundles from the standard families.
    pub gamma: Option<GammaVector>,
}

fn t(a: i32, b: i32) -> Monomial {
    Monomial::from_exps(&[(T1, a), (T2, b)])
}

impl ToricSurfaceData {
    /// ℙ² with `⊕ O(d_i)`, linearized to have weight 1 at the origin chart.
    pub fn p2_bundle(ds: &[i32]) -> Self {
        let charts = [(t(1, 0), t(0, 1), (0, 0)), (t(-1, 0), t(-1, 1), (1, 0)), (t(0, -1), t(1, -1), (0, 1))];
        let fixed = charts
            .iter()
            .map(|&(w1, w2, (x, y))| FixedPoint { w: [w1, w2], l: ds.iter().map(|&d| t(-d * x, -d * y)).collect() })
            .collect();
        let gamma = if let [d] = ds { Some(GammaVector([(d * d) as i64, 3 * *d as i64, 9, 3])) } else { None };
        ToricSurfaceData { label: format!("P2 O{:?}", ds), fixed, gamma }
    }

    pub fn p2(d: i32) -> Self {
        Self::p2_bundle(&[d])
    }

    /// ℙ¹×ℙ¹ with `⊕ O(a_i, b_i)`.
    pub fn p1p1_bundle(ab: &[(i32, i32)]) -> Self {
        let mut fixed = Vec::new();
        for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let w = [t(1 - 2 * x, 0), t(0, 1 - 2 * y)];
            fixed.push(FixedPoint { w, l: ab.iter().map(|&(a, b)| t(-a * x, -b * y)).collect() });
        }
        let gamma = if let [(a, b)] = ab { Some(GammaVector([(2 * a * b) as i64, 2 * (a + b) as i64, 8, 4])) } else { None };
        ToricSurfaceData { label: format!("P1xP1 O{:?}", ab), fixed, gamma }
    }

    pub fn p1p1(a: i32, b: i32) -> Self {
        Self::p1p1_bundle(&[(a, b)])
    }

    /// The same surface with the bundle replaced fiberwise.
    pub fn map_bundle<F: Fn(&FixedPoint) -> Vec<Monomial>>(&self, label: &str, f: F) -> Self {
        let fixed = self.fixed.iter().map(|p| FixedPoint { w: p.w, l: f(p) }).collect();
        ToricSurfaceData { label: format!("{} {}", self.label, label), fixed, gamma: None }
    }

    pub fn cotangent(&self) -> Self {
        self.map_bundle("cotangent", |p| alloc::vec![p.w[0].inv(), p.w[1].inv()])
    }

    pub fn structure_sheaf(&self) -> Self {
        self.map_bundle("O", |_| alloc::vec![Monomial::ONE])
    }

    /// `V^{⊗k}` for a line bundle `V`.
    pub fn tensor_power(&self, k: i32) -> Self {
        self.map_bundle(&format!("^{}", k), |p| p.l.iter().map(|l| l.pow(k)).collect())
    }

    /// `V ⊗ Ω_S`.
    pub fn twist_by_cotangent(&self) -> Self {
        self.map_bundle("(x) cotangent", |p| p.l.iter().flat_map(|l| [*l * p.w[0].inv(), *l * p.w[1].inv()]).collect())
    }

    /// `Λ²V` for a split bundle.
    pub fn wedge2(&self) -> Self {
        self.map_bundle("wedge2", |p| {
            let mut out = Vec::new();
            for i in 0..p.l.len() {
                for j in i + 1..p.l.len() {
                    out.push(p.l[i] * p.l[j]);
                }
            }
            out
        })
    }

    /// `V ⊗ Λ²V` for a split bundle.
    pub fn times_wedge2(&self) -> Self {
        let w2 = self.wedge2();
        let fixed = self
            .fixed
            .iter()
            .zip(w2.fixed.iter())
            .map(|(p, q)| FixedPoint { w: p.w, l: p.l.iter().flat_map(|a| q.l.iter().map(move |b| *a * *b)).collect() })
            .collect();
        ToricSurfaceData { label: format!("{} (x) wedge2", self.label), fixed, gamma: None }
    }

    pub fn rank(&self) -> usize {
        self.fixed.first().map(|p| p.l.len()).unwrap_or(0)
    }

    /// `Σ_i ch(V_{s_i}) / ((1 - w_1^{-1})(1 - w_2^{-1}))`.
    pub fn chi_equivariant(&self) -> Result<RationalFunction> {
        let mut acc = RationalFunction::zero();
        for p in self.fixed.iter() {
            let ch = LaurentPoly::from_terms(p.l.iter().map(|l| (*l, rat(1))));
            acc = &acc + &RationalFunction::from_parts(ch, &[p.w[0].inv(), p.w[1].inv()])?;
        }
        Ok(acc.cancel())
    }

    /// Nonequivariant `χ(S, V)`, checked at two specializations.
    pub fn euler_char(&self) -> Result<Rational> {
        let f = self.chi_equivariant()?;
        let pairs = generic_pairs(f.denominator().keys(), 2);
        let a = value_at_one(&to_s(&f, pairs[0])?)?;
        let b = value_at_one(&to_s(&f, pairs[1])?)?;
        if a != b {
            return Err(Error::Invariant(format!("χ depends on the specialization: {} vs {}", a, b)));
        }
        Ok(a)
    }

    pub fn euler_int(&self) -> Result<i64> {
        let c = self.euler_char()?;
        if !c.is_integer() {
            return Err(Error::Invariant(format!("non-integral χ = {}", c)));
        }
        i64::try_from(c.to_integer()).map_err(|_| Error::Domain(String::from("χ out of range")))
    }

    /// `χ(O_S)`.
    pub fn chi_o(&self) -> Result<i64> {
        self.structure_sheaf().euler_int()
    }
}

/// `x (x-1) ... (x-k+1) / k!`, zero for `k < 0`.
pub fn binom(x: i64, k: i64) -> Rational {
    if k < 0 {
        return rat(0);
    }
    let mut r = rat(1);
    for i in 0..k {
        r = r * rat(x - i) / rat(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_counts() {
        assert_eq!(ToricSurfaceData::p2(0).fixed.len(), 3);
        assert_eq!(ToricSurfaceData::p1p1(0, 0).fixed.len(), 4);
    }

    #[test]
    fn structure_sheaf_and_line_bundles() {
        for d in -3..=4 {
            let want = ((d + 1) * (d + 2) / 2) as i64;
            assert_eq!(ToricSurfaceData::p2(d).euler_int().unwrap(), want, "P2 O({})", d);
        }
        for a in -2..=2 {
            for b in -2..=2 {
                assert_eq!(ToricSurfaceData::p1p1(a, b).euler_int().unwrap(), ((a + 1) * (b + 1)) as i64);
            }
        }
        assert_eq!(ToricSurfaceData::p2(0).chi_o().unwrap(), 1);
        assert_eq!(ToricSurfaceData::p1p1(1, 0).chi_o().unwrap(), 1);
    }

    #[test]
    fn cotangent_of_the_quadric_is_minus_two_equivariantly() {
        let x = ToricSurfaceData::p1p1(0, 0).cotangent();
        assert_eq!(x.chi_equivariant().unwrap(), RationalFunction::constant(rat(-2)));
        assert_eq!(x.euler_int().unwrap(), -2);
    }

    #[test]
    fn generator_gammas() {
        assert_eq!(ToricSurfaceData::p2(0).gamma, Some(GammaVector([0, 0, 9, 3])));
        assert_eq!(ToricSurfaceData::p2(1).gamma, Some(GammaVector([1, 3, 9, 3])));
        assert_eq!(ToricSurfaceData::p1p1(0, 0).gamma, Some(GammaVector([0, 0, 8, 4])));
        assert_eq!(ToricSurfaceData::p1p1(1, 0).gamma, Some(GammaVector([0, 2, 8, 4])));
        assert_eq!(ToricSurfaceData::p2(2).gamma, Some(GammaVector([4, 6, 9, 3])));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(-1, 0), rat(1));
        assert_eq!(binom(-1, 2), rat(1));
        assert_eq!(binom(3, 5), rat(0));
        assert_eq!(binom(2, -1), rat(0));
    }
}
