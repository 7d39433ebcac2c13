use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{rat, Rational};
use crate::{Error, Result};

use super::local::{chi_lambda_c2, chi_sym_c2, Functor, TautOrders};
use super::special::surface_nonequivariant;
use super::surface::{GammaVector, ToricSurfaceData};
use super::RatSeries;

/// `(ℙ², O)`, `(ℙ², O(1))`, `(ℙ¹×ℙ¹, O)`, `(ℙ¹×ℙ¹, O(1,0))`.
pub fn generators() -> [ToricSurfaceData; 4] {
    [ToricSurfaceData::p2(0), ToricSurfaceData::p2(1), ToricSurfaceData::p1p1(0, 0), ToricSurfaceData::p1p1(1, 0)]
}

/// The nonequivariant series `χ_Λ` or `χ_Sym` of a toric surface.
pub fn chi_series(x: &ToricSurfaceData, f: Functor, o: TautOrders) -> Result<RatSeries> {
    surface_nonequivariant(x, |p| match f {
        Functor::Lambda => chi_lambda_c2(&p.l, p.w, o),
        Functor::Sym => chi_sym_c2(&p.l, p.w, o),
    })
}

fn invert4(m: [[Rational; 4]; 4]) -> Result<[[Rational; 4]; 4]> {
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| rat((i == j) as i64)).collect()).collect();
    for c in 0..4 {
        let p = (c..4).find(|&r| a[r][c] != rat(0)).ok_or_else(|| Error::Domain(format!("γ-vectors are linearly dependent: {:?}", m)))?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..4 {
            a[c][j] = a[c][j].clone() / piv.clone();
            inv[c][j] = inv[c][j].clone() / piv.clone();
        }
        for r in 0..4 {
            if r != c && a[r][c] != rat(0) {
                let f = a[r][c].clone();
                for j in 0..4 {
                    a[r][j] = a[r][j].clone() - f.clone() * a[c][j].clone();
                    inv[r][j] = inv[r][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
    }
    let mut out: [[Rational; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = inv[i][j].clone();
        }
    }
    Ok(out)
}

/// `A_1..A_4` with `log χ(S, L) = Σ γ_i(S, L) A_i`, solved from the generators.
pub fn universal_solve(f: Functor, o: TautOrders) -> Result<[RatSeries; 4]> {
    let gens = generators();
    let mut logs = Vec::new();
    let mut g: [[Rational; 4]; 4] = Default::default();
    for (j, x) in gens.iter().enumerate() {
        let gamma = x.gamma.ok_or_else(|| Error::Domain(format!("{} has no γ-vector", x.label)))?;
        for (gji, &e) in g[j].iter_mut().zip(gamma.0.iter()) {
            *gji = rat(e);
        }
        logs.push(chi_series(x, f, o)?.log()?);
    }
    let gi = invert4(g)?;
    let build = |i: usize| {
        let mut acc = logs[0].scale(&gi[i][0]);
        for (j, l) in logs.iter().enumerate().skip(1) {
            acc = acc.add(&l.scale(&gi[i][j]));
        }
        acc
    };
    Ok([build(0), build(1), build(2), build(3)])
}

/// `exp(Σ γ_i A_i)`.
pub fn reconstruct(a: &[RatSeries; 4], g: GammaVector) -> Result<RatSeries> {
    let mut acc = a[0].scale(&rat(g.0[0]));
    for (ai, &e) in a.iter().zip(g.0.iter()).skip(1) {
        acc = acc.add(&ai.scale(&rat(e)));
    }
    acc.exp()
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    #[test]
    fn generator_matrix_is_invertible() {
        let mut g: [[Rational; 4]; 4] = Default::default();
        for (j, x) in generators().iter().enumerate() {
            for i in 0..4 {
                g[j][i] = rat(x.gamma.unwrap().0[i]);
            }
        }
        let gi = invert4(g.clone()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let s = (0..4).fold(rat(0), |acc, k| acc + g[i][k].clone() * gi[k][j].clone());
                assert_eq!(s, rat((i == j) as i64));
            }
        }
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let mut g: [[Rational; 4]; 4] = Default::default();
        for j in 0..4 {
            for i in 0..4 {
                g[j][i] = rat((i + j) as i64);
            }
        }
        assert!(invert4(g).is_err());
    }
}
