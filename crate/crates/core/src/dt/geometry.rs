use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Monomial;
use crate::characters::{Character, SlopeRegime, T1, T2, T3};
use crate::vertex::EdgeKind;
use crate::{Error, Result};

use super::vars::{M1, M2, M3, M4, U, V};

pub type Frame = [Monomial; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
}

/// A compact edge from axis `axis_a` of vertex `a` to axis `axis_b` of `b`.
/// Its partition sits at `a` as given and at `b` transposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedEdge {
    pub label: &'static str,
    pub a: usize,
    pub axis_a: usize,
    pub b: usize,
    pub axis_b: usize,
    /// Normal degrees read in the frame of `a`.
    pub kind: EdgeKind,
    /// Slot of the Kähler variable weighting this edge.
    pub kahler: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCY {
    pub name: String,
    pub vertex_labels: Vec<&'static str>,
    pub vertices: Vec<Frame>,
    pub edges: Vec<BoundedEdge>,
    pub orientation: Orientation,
}

/// The frame `[w_k, w_{k+1}, w_{k+2}]` with axis `k` first.
pub fn edge_first(w: &Frame, k: usize) -> Frame {
    [w[k % 3], w[(k + 1) % 3], w[(k + 2) % 3]]
}

fn from_edge_first(e: &Frame, k: usize) -> Frame {
    let mut out = [Monomial::ONE; 3];
    for i in 0..3 {
        out[(k + i) % 3] = e[i];
    }
    out
}

/// Edge-first frame at the far end of an edge of the given kind.
pub fn weight_shift(w: &Frame, kind: EdgeKind) -> Frame {
    [w[0].inv(), w[0].pow(-(kind.1 as i32)) * w[2], w[0].pow(-(kind.0 as i32)) * w[1]]
}

fn parallel(x: &Monomial, y: &Monomial) -> bool {
    x == y || *x == y.inv()
}

impl ToricCY {
    /// Spreads the seed frame over the edge graph and checks that every edge
    /// and every vertex is consistent.
    pub fn propagate(
        name: &str,
        vertex_labels: Vec<&'static str>,
        seed: (usize, Frame),
        edges: Vec<BoundedEdge>,
    ) -> Result<Self> {
        let n = vertex_labels.len();
        let mut frames: Vec<Option<Frame>> = vec![None; n];
        frames[seed.0] = Some(seed.1);
        loop {
            let mut changed = false;
            for e in edges.iter() {
                match (frames[e.a], frames[e.b]) {
                    (Some(fa), None) => {
                        let fb = weight_shift(&edge_first(&fa, e.axis_a), e.kind);
                        frames[e.b] = Some(from_edge_first(&fb, e.axis_b));
                        changed = true;
                    }
                    (None, Some(fb)) => {
                        let back = EdgeKind(e.kind.1, e.kind.0);
                        let fa = weight_shift(&edge_first(&fb, e.axis_b), back);
                        frames[e.a] = Some(from_edge_first(&fa, e.axis_a));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        let vertices = frames
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| Error::Domain(format!("vertex {} is not connected to the seed", vertex_labels[i]))))
            .collect::<Result<Vec<_>>>()?;
        let x = ToricCY { name: String::from(name), vertex_labels, vertices, edges, orientation: Orientation::CounterClockwise };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, w) in self.vertices.iter().enumerate() {
            if w[0] * w[1] * w[2] != Character::kappa() {
                return Err(Error::Invariant(format!("weights at {} do not multiply to t1 t2 t3", self.vertex_labels[i])));
            }
        }
        for e in self.edges.iter() {
            let fa = edge_first(&self.vertices[e.a], e.axis_a);
            let fb = edge_first(&self.vertices[e.b], e.axis_b);
            if weight_shift(&fa, e.kind) != fb {
                return Err(Error::Invariant(format!("edge {} does not glue its end frames", e.label)));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            for f in self.edges[i + 1..].iter() {
                if e.kahler != f.kahler {
                    continue;
                }
                let we = self.vertices[e.a][e.axis_a];
                let wf = self.vertices[f.a][f.axis_a];
                if e.kind != f.kind || !parallel(&we, &wf) {
                    return Err(Error::Invariant(format!("edges {} and {} share a Kähler variable but are not homologous", e.label, f.label)));
                }
            }
        }
        Ok(())
    }

    /// Legs at each vertex for one partition per edge.
    pub fn legs(&self, assignment: &[crate::partitions::Partition2D]) -> Vec<[crate::partitions::Partition2D; 3]> {
        use crate::partitions::Partition2D;
        let mut legs: Vec<[Partition2D; 3]> = vec![[Partition2D::empty(), Partition2D::empty(), Partition2D::empty()]; self.vertices.len()];
        for (e, l) in self.edges.iter().zip(assignment.iter()) {
            legs[e.a][e.axis_a] = l.clone();
            legs[e.b][e.axis_b] = l.conjugate();
        }
        legs
    }
}

fn t(e: [i32; 3]) -> Monomial {
    Monomial::from_exps(&[(T1, e[0]), (T2, e[1]), (T3, e[2])])
}

fn seed_frame() -> Frame {
    [t([0, 0, 1]), t([1, 0, 0]), t([0, 1, 0])]
}

fn edge(label: &'static str, a: usize, axis_a: usize, b: usize, axis_b: usize, kind: EdgeKind, kahler: usize) -> BoundedEdge {
    BoundedEdge { label, a, axis_a, b, axis_b, kind, kahler }
}

/// Local P¹×P¹ glued to four resolved conifold legs: eight vertices, two
/// vertical surface edges (u), two horizontal ones (v) and four conifold
/// edges (m1..m4). Edges are listed left to right, then top to bottom.
pub fn make_x1() -> Result<ToricCY> {
    const C: EdgeKind = EdgeKind::CONIFOLD;
    const S: EdgeKind = EdgeKind::SURFACE;
    let edges = vec![
        edge("k1", 2, 0, 0, 0, C, M1),
        edge("k4", 3, 1, 1, 1, C, M4),
        edge("mu1", 3, 2, 2, 2, S, V),
        edge("la1", 2, 1, 4, 0, S, U),
        edge("la2", 5, 1, 3, 0, S, U),
        edge("mu2", 4, 2, 5, 2, S, V),
        edge("k2", 4, 1, 6, 1, C, M2),
        edge("k3", 5, 0, 7, 0, C, M3),
    ];
    ToricCY::propagate("X1", vec!["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"], (2, seed_frame()), edges)
}

/// The half of the first geometry left of the vertical line: one surface edge
/// (u) between two conifold edges (m1, m2).
pub fn make_x2() -> Result<ToricCY> {
    let edges = vec![
        edge("k1", 1, 0, 0, 0, EdgeKind::CONIFOLD, M1),
        edge("la1", 1, 1, 2, 0, EdgeKind::SURFACE, U),
        edge("k2", 2, 1, 3, 1, EdgeKind::CONIFOLD, M2),
    ];
    ToricCY::propagate("X2", vec!["v1", "v3", "v5", "v7"], (1, seed_frame()), edges)
}

/// The regime a global slope induces in a vertex chart, read off from the
/// grades of the local weights.
pub fn local_regime(w: &Frame, sigma: &SlopeRegime) -> Result<SlopeRegime> {
    let g: Vec<(i64, i64)> = w.iter().map(|m| sigma.grade(m)).collect();
    if let SlopeRegime::Explicit(_) = sigma {
        return SlopeRegime::explicit([g[0].0, g[1].0, g[2].0]);
    }
    let zero: Vec<usize> = (0..3).filter(|&i| g[i].0 == 0).collect();
    if zero.len() != 1 || g[zero[0]].1 == 0 {
        return Err(Error::Table(format!("chart grades {:?} under {} match no preferred regime", g, sigma)));
    }
    let k = zero[0];
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    if g[i].0 != -g[j].0 {
        return Err(Error::Table(format!("chart grades {:?} under {} are unbalanced", g, sigma)));
    }
    let p = if g[i].0 > 0 { i } else { j };
    SlopeRegime::preferred(p, 1, k, g[k].1.signum() as i8)
}

pub fn kahler_monomial(x: &ToricCY, assignment: &[crate::partitions::Partition2D]) -> Monomial {
    let mut m = Monomial::ONE;
    for (e, l) in x.edges.iter().zip(assignment.iter()) {
        m = m * Monomial::var(e.kahler).pow(l.size() as i32);
    }
    m
}

/// Kähler variables of every edge, deduplicated.
pub fn kahler_slots(x: &ToricCY) -> Vec<usize> {
    let mut v: Vec<usize> = x.edges.iter().map(|e| e.kahler).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conifold_shift_example() {
        let w = [t([1, 0, 0]), t([0, 1, 0]), t([0, 0, 1])];
        assert_eq!(weight_shift(&w, EdgeKind::CONIFOLD), [t([-1, 0, 0]), t([1, 0, 1]), t([1, 1, 0])]);
    }

    #[test]
    fn shift_back_is_the_swapped_kind() {
        let w = [t([2, -1, 0]), t([0, 3, 1]), t([-2, -2, 0])];
        for kind in [EdgeKind::CONIFOLD, EdgeKind::SURFACE, EdgeKind(1, -3)] {
            let there = weight_shift(&w, kind);
            assert_eq!(weight_shift(&there, EdgeKind(kind.1, kind.0)), w);
        }
    }

    #[test]
    fn first_geometry_frames() {
        let x = make_x1().unwrap();
        let want = [
            [t([0, 0, -1]), t([0, 1, 1]), t([1, 0, 1])],
            [t([0, 1, 1]), t([0, -2, -1]), t([1, 2, 1])],
            [t([0, 0, 1]), t([1, 0, 0]), t([0, 1, 0])],
            [t([1, 0, 0]), t([0, 2, 1]), t([0, -1, 0])],
            [t([-1, 0, 0]), t([2, 0, 1]), t([0, 1, 0])],
            [t([2, 2, 1]), t([-1, 0, 0]), t([0, -1, 0])],
            [t([2, 1, 1]), t([-2, 0, -1]), t([1, 0, 1])],
            [t([-2, -2, -1]), t([2, 1, 1]), t([1, 2, 1])],
        ];
        assert_eq!(x.vertices, want);
    }

    #[test]
    fn second_geometry_is_a_sub_diagram() {
        let x1 = make_x1().unwrap();
        let x2 = make_x2().unwrap();
        for (i, j) in [(0, 0), (1, 2), (2, 4), (3, 6)] {
            assert_eq!(x2.vertices[i], x1.vertices[j]);
        }
    }

    #[test]
    fn inconsistent_cycle_is_rejected() {
        let mut x = make_x1().unwrap();
        x.edges[4].kind = EdgeKind::CONIFOLD;
        assert!(x.validate().is_err());
    }

    #[test]
    fn regime_a_charts() {
        let x = make_x1().unwrap();
        let a = SlopeRegime::preferred(2, 1, 1, 1).unwrap();
        for w in x.vertices.iter() {
            local_regime(w, &a).unwrap();
        }
        // the seed chart sees the global regime itself, with axes relabelled
        assert_eq!(local_regime(&x.vertices[2], &a).unwrap(), SlopeRegime::preferred(0, 1, 2, 1).unwrap());
    }
}
