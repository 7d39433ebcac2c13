use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A partition, stored as weakly decreasing positive parts. Box `(b1, b2)`
/// sits in row `b1`, column `b2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2D {
    parts: Vec<u32>,
}

/// Inner corners `c⁻₀ > c⁻₁ > …` and outer corners `c⁺₁ > …`, interleaved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    pub inner: Vec<i64>,
    pub outer: Vec<i64>,
}

impl Partition2D {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(String::from("partition parts must be positive")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(String::from("partition parts must weakly decrease")));
        }
        Ok(Partition2D { parts })
    }

    pub fn empty() -> Self {
        Partition2D { parts: Vec::new() }
    }

    /// Panicking constructor for literals.
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("invalid partition literal")
    }

    /// Builds from the row lengths of a downward-closed box set, dropping zeros.
    pub(crate) fn from_rows(mut rows: Vec<u32>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Partition2D { parts: rows }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of rows.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// `λ_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Sum of squared parts.
    pub fn norm2(&self) -> u64 {
        self.parts.iter().map(|&p| (p as u64) * (p as u64)).sum()
    }

    pub fn conjugate(&self) -> Self {
        let w = self.parts.first().copied().unwrap_or(0);
        let parts = (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32).collect();
        Partition2D { parts }
    }

    pub fn contains(&self, b1: u32, b2: u32) -> bool {
        self.parts.get(b1 as usize).is_some_and(|&p| b2 < p)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i as u32, j)))
    }

    pub fn arm_leg(&self, b1: u32, b2: u32) -> Result<(i64, i64)> {
        if !self.contains(b1, b2) {
            return Err(Error::Domain(alloc::format!("box ({},{}) not in {}", b1, b2, self)));
        }
        let a = self.part(b1 as usize + 1) as i64 - b2 as i64 - 1;
        let l = self.conjugate().part(b2 as usize + 1) as i64 - b1 as i64 - 1;
        Ok((a, l))
    }

    /// Arm and leg of every box, row-major; one conjugation for the whole set.
    pub fn arms_legs(&self) -> Vec<((u32, u32), (i64, i64))> {
        let c = self.conjugate();
        self.boxes()
            .map(|(b1, b2)| {
                let a = self.part(b1 as usize + 1) as i64 - b2 as i64 - 1;
                let l = c.part(b2 as usize + 1) as i64 - b1 as i64 - 1;
                ((b1, b2), (a, l))
            })
            .collect()
    }

    pub fn corners(&self) -> Corners {
        // distinct parts n_1 > … > n_d with multiplicities m_i
        let mut n: Vec<i64> = Vec::new();
        let mut m: Vec<i64> = Vec::new();
        for &p in self.parts.iter() {
            if n.last() == Some(&(p as i64)) {
                *m.last_mut().unwrap() += 1;
            } else {
                n.push(p as i64);
                m.push(1);
            }
        }
        let d = n.len();
        let nn = |i: usize| if i >= 1 && i <= d { n[i - 1] } else { 0 };
        let mut inner = Vec::with_capacity(d + 1);
        let mut outer = Vec::with_capacity(d);
        let mut acc = 0;
        for i in 0..=d {
            if i >= 1 {
                acc += m[i - 1];
                outer.push(nn(i) - acc);
            }
            inner.push(nn(i + 1) - acc);
        }
        Corners { inner, outer }
    }

    /// Parses `"3,1"`, `"3 1"`, `"()"` or the empty string.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            parts.push(tok.parse::<u32>().map_err(|_| Error::Domain(alloc::format!("bad partition part {:?}", tok)))?);
        }
        Self::new(parts)
    }
}

impl fmt::Display for Partition2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// Partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition2D> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition2D>) {
        if rest == 0 {
            out.push(Partition2D { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_up_to(n: u32) -> Vec<Partition2D> {
    (0..=n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arm_leg_examples() {
        assert_eq!(Partition2D::of(&[4, 4, 2, 1]).arm_leg(1, 0).unwrap(), (3, 2));
        assert_eq!(Partition2D::of(&[1]).arm_leg(0, 0).unwrap(), (0, 0));
        assert_eq!(Partition2D::of(&[3, 1]).arm_leg(0, 1).unwrap(), (1, 0));
        assert!(Partition2D::of(&[3, 1]).arm_leg(1, 1).is_err());
    }

    #[test]
    fn corner_examples() {
        let c = Partition2D::empty().corners();
        assert_eq!((c.inner, c.outer), (alloc::vec![0], alloc::vec![]));
        let c = Partition2D::of(&[3, 3, 1, 1]).corners();
        assert_eq!((c.inner, c.outer), (alloc::vec![3, -1, -4], alloc::vec![1, -3]));
        let c = Partition2D::of(&[1]).corners();
        assert_eq!((c.inner, c.outer), (alloc::vec![1, -1], alloc::vec![0]));
    }

    #[test]
    fn counts_and_parse() {
        let counts: Vec<usize> = (0..8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, alloc::vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition2D::parse("3,1").unwrap(), Partition2D::of(&[3, 1]));
        assert_eq!(Partition2D::parse("()").unwrap(), Partition2D::empty());
        assert!(Partition2D::parse("1,3").is_err());
        assert_eq!(alloc::format!("{}", Partition2D::of(&[2, 1])), "(2,1)");
    }
}
