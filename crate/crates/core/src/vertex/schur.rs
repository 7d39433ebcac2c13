use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, Monomial, Rational, TruncatedSeries, EXACT};
use crate::partitions::Partition2D;
use crate::{Error, Result};

pub type Series = TruncatedSeries<Rational>;

/// The sequence whose `i`-th letter (0-based) is `base^{i+1/2} · other^{-shift_{i+1}}`,
/// e.g. `t^{-ρ} q^{-νᵗ}` is `base = t, other = q, shift = νᵗ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedAlphabet {
    pub base: usize,
    pub other: usize,
    pub shift: Partition2D,
}

impl SpecializedAlphabet {
    pub fn new(base: usize, other: usize, shift: Partition2D) -> Self {
        SpecializedAlphabet { base, other, shift }
    }

    /// Plain `base^{-ρ}`.
    pub fn rho(base: usize) -> Self {
        SpecializedAlphabet { base, other: base, shift: Partition2D::empty() }
    }

    pub fn letter(&self, i: usize) -> Monomial {
        let s = self.shift.part(i + 1) as i32;
        let mut m = Monomial::doubled(&[(self.base, 2 * i as i32 + 1)]);
        if s != 0 {
            m = m * Monomial::from_exps(&[(self.other, -s)]);
        }
        m
    }

    /// Number of letters needed so that every omitted term of a degree-`n`
    /// symmetric function lies beyond the bound of some grading, together with
    /// the index of that grading and the certified bound it leaves for `h_k`.
    fn truncation(&self, n: usize, template: &[Grading]) -> Result<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (gi, g) in template.iter().enumerate() {
            if g.bound >= EXACT || g.weights[self.base] <= 0 {
                continue;
            }
            let mg = self.min_grade(g);
            let need = g.bound - (n as i64 - 1).max(0) * mg.min(0);
            let mut nv = self.shift.length();
            while g.grade(&self.letter(nv)) <= need {
                nv += 1;
            }
            if best.is_none_or(|(b, _)| nv < b) {
                best = Some((nv, gi));
            }
        }
        best.ok_or_else(|| Error::Direction(String::from("no bounded grading truncates the alphabet")))
    }

    /// Least grade of any letter; the tail past the shifted letters only grows.
    fn min_grade(&self, g: &Grading) -> i64 {
        (0..=self.shift.length()).map(|i| g.grade(&self.letter(i))).min().unwrap_or(0)
    }
}

/// `h_0, …, h_kmax` of a finite alphabet.
pub fn complete_homogeneous(letters: &[Monomial], kmax: usize, template: &[Grading]) -> Vec<Series> {
    let mut h: Vec<Series> = Vec::with_capacity(kmax + 1);
    h.push(Series::one(template));
    for _ in 0..kmax {
        h.push(Series::zero(template));
    }
    for &x in letters {
        let xs = Series::term(template, x, rat(1));
        for k in 1..=kmax {
            let add = xs.mul(&h[k - 1]);
            h[k] = h[k].add(&add);
        }
    }
    h
}

/// `h_k` of a specialized alphabet, with bounds certified against the
/// omitted letters.
fn complete_homogeneous_specialized(a: &SpecializedAlphabet, kmax: usize, template: &[Grading]) -> Result<Vec<Series>> {
    if kmax == 0 {
        return Ok(vec![Series::one(template)]);
    }
    let (nv, gi) = a.truncation(kmax, template)?;
    let letters: Vec<Monomial> = (0..nv).map(|i| a.letter(i)).collect();
    let g = &template[gi];
    let mg = a.min_grade(g);
    let first_omitted = g.grade(&a.letter(nv));
    let h = complete_homogeneous(&letters, kmax, template);
    Ok(h
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            if k == 0 {
                s
            } else {
                // an omitted letter times k-1 others has at least this grade
                let cut = first_omitted + (k as i64 - 1) * mg - 1;
                let b = s.bound(gi).min(cut);
                s.truncate_grading(gi, b)
            }
        })
        .collect())
}

fn contains(outer: &Partition2D, inner: &Partition2D) -> bool {
    inner.length() <= outer.length() && (1..=inner.length()).all(|i| inner.part(i) <= outer.part(i))
}

/// `det[h_{λ_i - η_j - i + j}]` by Laplace expansion along rows, memoized on
/// the set of columns already used.
fn jacobi_trudi(lambda: &Partition2D, eta: &Partition2D, h: &[Series], template: &[Grading]) -> Series {
    let n = lambda.length();
    let entry = |i: usize, j: usize| -> Option<&Series> {
        let k = lambda.part(i + 1) as i64 - eta.part(j + 1) as i64 - i as i64 + j as i64;
        // entries past h.len() only occur in terms that also use a negative index
        h.get(usize::try_from(k).ok()?)
    };
    let mut memo: BTreeMap<u32, Series> = BTreeMap::new();
    // rows n-1 first so each mask is computed from strictly larger masks
    memo.insert((1u32 << n) - 1, Series::one(template));
    for mask in (0..(1u32 << n) - 1).rev() {
        let row = mask.count_ones() as usize;
        let mut acc = Series::zero(template);
        let mut parity = 0;
        for c in 0..n {
            if mask & (1 << c) != 0 {
                continue;
            }
            if let (Some(e), Some(rest)) = (entry(row, c), memo.get(&(mask | (1 << c)))) {
                let term = e.mul(rest);
                acc = if parity % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            parity += 1;
        }
        memo.insert(mask, acc);
    }
    memo.remove(&0).expect("full expansion present")
}

/// `s_{λ/η}` of a finite list of letters.
pub fn skew_schur_finite(lambda: &Partition2D, eta: &Partition2D, letters: &[Monomial], template: &[Grading]) -> Series {
    if !contains(lambda, eta) {
        return Series::zero(template);
    }
    let kmax = (lambda.size() - eta.size()) as usize;
    let h = complete_homogeneous(letters, kmax, template);
    jacobi_trudi(lambda, eta, &h, template)
}

/// `s_{λ/η}` of a specialized alphabet.
pub fn skew_schur(lambda: &Partition2D, eta: &Partition2D, a: &SpecializedAlphabet, template: &[Grading]) -> Result<Series> {
    if !contains(lambda, eta) {
        return Ok(Series::zero(template));
    }
    let kmax = (lambda.size() - eta.size()) as usize;
    let h = complete_homogeneous_specialized(a, kmax, template)?;
    Ok(jacobi_trudi(lambda, eta, &h, template))
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: usize = 0;
    const Q: usize = 1;

    fn tmpl(b: i64) -> Vec<Grading> {
        vec![Grading::degree(&[T, Q], b)]
    }

    #[test]
    fn single_box_is_the_power_sum() {
        let x = [Monomial::var(0), Monomial::var(1)];
        let g = vec![Grading::degree(&[0, 1], 5)];
        let s = skew_schur_finite(&Partition2D::of(&[1]), &Partition2D::empty(), &x, &g);
        let want = Series::from_terms(&g, [(x[0], rat(1)), (x[1], rat(1))]);
        assert_eq!(s, want);
    }

    #[test]
    fn rho_alphabet_first_terms() {
        let g = tmpl(5);
        let s = skew_schur(&Partition2D::of(&[1]), &Partition2D::empty(), &SpecializedAlphabet::rho(T), &g).unwrap();
        let want = Series::from_terms(&g, (0..5).map(|i| (Monomial::doubled(&[(T, 2 * i + 1)]), rat(1))));
        assert_eq!(s.first_difference(&want), None);
        assert!(s.bound(0) >= 10);
    }

    #[test]
    fn non_contained_shape_vanishes() {
        let g = tmpl(4);
        let s = skew_schur(&Partition2D::of(&[1]), &Partition2D::of(&[2]), &SpecializedAlphabet::rho(T), &g).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn shifted_alphabet_letters() {
        // t^{-ρ} q^{-(2,1)}: t^{1/2} q^{-2}, t^{3/2} q^{-1}, t^{5/2}, …
        let a = SpecializedAlphabet::new(T, Q, Partition2D::of(&[2, 1]));
        assert_eq!(a.letter(0), Monomial::doubled(&[(T, 1), (Q, -4)]));
        assert_eq!(a.letter(1), Monomial::doubled(&[(T, 3), (Q, -2)]));
        assert_eq!(a.letter(2), Monomial::doubled(&[(T, 5)]));
    }
}
