use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::plane::Partition2D;
use crate::{Error, Result};

pub type Box3 = [u32; 3];

/// A three-dimensional partition: the union of three cylindrical legs plus a
/// finite set of extra boxes outside every leg.
///
/// Leg 1 is `{(b, x, y) : (x, y) ∈ λ}`, leg 2 is `{(y, b, x) : (x, y) ∈ μ}`,
/// leg 3 is `{(x, y, b) : (x, y) ∈ ν}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition3D {
    legs: [Partition2D; 3],
    extra: Vec<Box3>,
    chi: i64,
}

fn leg_extent(legs: &[Partition2D; 3]) -> u32 {
    legs.iter().map(|l| (l.length() as u32).max(l.part(1))).max().unwrap_or(0)
}

fn in_leg(legs: &[Partition2D; 3], k: usize, p: &Box3) -> bool {
    match k {
        0 => legs[0].contains(p[1], p[2]),
        1 => legs[1].contains(p[2], p[0]),
        _ => legs[2].contains(p[0], p[1]),
    }
}

/// Renormalized volume of the bare leg union.
pub(crate) fn chi_min(legs: &[Partition2D; 3]) -> i64 {
    let m = leg_extent(legs);
    let mut chi = 0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let p = [a, b, c];
                let k = (0..3).filter(|&k| in_leg(legs, k, &p)).count() as i64;
                if k >= 2 {
                    chi += 1 - k;
                }
            }
        }
    }
    chi
}

impl Partition3D {
    /// Validates that `extra` avoids the legs and that the union is downward closed.
    pub fn new(legs: [Partition2D; 3], extra: Vec<Box3>) -> Result<Self> {
        let set: BTreeSet<Box3> = extra.iter().copied().collect();
        if set.len() != extra.len() {
            return Err(Error::Domain(String::from("repeated extra box")));
        }
        let base = Partition3D { legs, extra: Vec::new(), chi: 0 };
        for p in set.iter() {
            if base.in_legs(p) {
                return Err(Error::Domain(alloc::format!("extra box {:?} lies in a leg", p)));
            }
            for i in 0..3 {
                if p[i] > 0 {
                    let mut q = *p;
                    q[i] -= 1;
                    if !set.contains(&q) && !base.in_legs(&q) {
                        return Err(Error::Domain(alloc::format!("box {:?} is not supported below", p)));
                    }
                }
            }
        }
        let chi = chi_min(&base.legs) + set.len() as i64;
        Ok(Partition3D { legs: base.legs, extra: set.into_iter().collect(), chi })
    }

    pub fn minimal(legs: [Partition2D; 3]) -> Self {
        let chi = chi_min(&legs);
        Partition3D { legs, extra: Vec::new(), chi }
    }

    pub fn legs(&self) -> &[Partition2D; 3] {
        &self.legs
    }

    /// Extra boxes, sorted.
    pub fn extra(&self) -> &[Box3] {
        &self.extra
    }

    /// Renormalized volume: each box counts `1 - #legs containing it`.
    pub fn renorm_volume(&self) -> i64 {
        self.chi
    }

    fn in_legs(&self, p: &Box3) -> bool {
        (0..3).any(|k| in_leg(&self.legs, k, p))
    }

    /// Which legs contain `p`, as flags for axes 1, 2, 3.
    pub fn leg_membership(&self, p: &Box3) -> [bool; 3] {
        [in_leg(&self.legs, 0, p), in_leg(&self.legs, 1, p), in_leg(&self.legs, 2, p)]
    }

    pub fn contains(&self, p: &Box3) -> bool {
        self.in_legs(p) || self.extra.binary_search(p).is_ok()
    }

    /// Bound past which only single legs continue.
    pub fn extent(&self) -> u32 {
        let e = self.extra.iter().flat_map(|p| p.iter().copied()).max().map_or(0, |x| x + 1);
        leg_extent(&self.legs).max(e)
    }

    /// Reads the asymptotic partitions off the box set far along each axis.
    pub fn asymptotics(&self) -> [Partition2D; 3] {
        let far = self.extent() + 1;
        let m = self.extent();
        let rows = |f: &dyn Fn(u32, u32) -> Box3| -> Partition2D {
            let r = (0..m).map(|x| (0..m).take_while(|&y| self.contains(&f(x, y))).count() as u32).collect();
            Partition2D::from_rows(r)
        };
        [
            rows(&|x, y| [far, x, y]),
            rows(&|x, y| [y, far, x]),
            rows(&|x, y| [x, y, far]),
        ]
    }

    /// Boxes `p ∉ π` with `π ∪ {p}` still a partition.
    pub fn addable(&self) -> Vec<Box3> {
        let m = leg_extent(&self.legs);
        let mut cand: BTreeSet<Box3> = BTreeSet::new();
        for a in 0..=m {
            for b in 0..=m {
                for c in 0..=m {
                    cand.insert([a, b, c]);
                }
            }
        }
        for p in self.extra.iter() {
            for i in 0..3 {
                let mut q = *p;
                q[i] += 1;
                cand.insert(q);
            }
        }
        cand.into_iter()
            .filter(|p| {
                !self.contains(p)
                    && (0..3).all(|i| {
                        p[i] == 0 || {
                            let mut q = *p;
                            q[i] -= 1;
                            self.contains(&q)
                        }
                    })
            })
            .collect()
    }

    /// Adds an addable box (see [`Partition3D::addable`]).
    pub fn with_box(&self, p: Box3) -> Self {
        let mut extra = self.extra.clone();
        let pos = extra.binary_search(&p).unwrap_err();
        extra.insert(pos, p);
        Partition3D { legs: self.legs.clone(), extra, chi: self.chi + 1 }
    }
}

/// All partitions with the given legs and renormalized volume at most
/// `max_chi`, ordered by volume and then lexicographically by extra boxes.
pub fn enumerate_3d(legs: [Partition2D; 3], max_chi: i64) -> Vec<Partition3D> {
    let base = Partition3D::minimal(legs);
    let mut out = Vec::new();
    if base.chi > max_chi {
        return out;
    }
    let mut level = alloc::vec![base];
    loop {
        let chi = level[0].chi;
        out.extend(level.iter().cloned());
        if chi >= max_chi {
            break;
        }
        let mut next: BTreeSet<Vec<Box3>> = BTreeSet::new();
        for pi in level.iter() {
            for p in pi.addable() {
                next.insert(pi.with_box(p).extra);
            }
        }
        let legs = level[0].legs.clone();
        level = next
            .into_iter()
            .map(|extra| Partition3D { legs: legs.clone(), extra, chi: chi + 1 })
            .collect();
        if level.is_empty() {
            break;
        }
    }
    out
}
