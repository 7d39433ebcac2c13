use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{Monomial, Rational};
use crate::characters::SlopeRegime;
use crate::par;
use crate::partitions::{partitions_up_to, Partition2D};
use crate::vertex::{edge_limit, table_label, tq_template, vertex_limit, with_headroom, EdgeKind, Series, VQ, VT};
use crate::Result;

use super::geometry::{edge_first, kahler_monomial, local_regime, ToricCY};
use super::vars::expanded_template;

/// Limit of one edge term: table label, kind and regime in the edge-first
/// frame.
pub type EdgeRule = fn(&Partition2D, EdgeKind, &SlopeRegime) -> Result<Monomial>;

/// Every choice of one partition per edge with total size at most `d`.
pub fn edge_assignments(n_edges: usize, d: u32) -> Vec<Vec<Partition2D>> {
    let pool = partitions_up_to(d);
    let mut out: Vec<Vec<Partition2D>> = alloc::vec![Vec::new()];
    for _ in 0..n_edges {
        let mut next = Vec::new();
        for a in out.iter() {
            let used: u64 = a.iter().map(|p| p.size()).sum();
            for p in pool.iter().filter(|p| used + p.size() <= d as u64) {
                let mut b = a.clone();
                b.push(p.clone());
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// The tables are keyed by a label that differs from the partition sitting
/// at the edge's first vertex by a transpose for conifold edges.
fn edge_term(l: &Partition2D, kind: EdgeKind, w: &super::geometry::Frame, sigma: &SlopeRegime, rule: EdgeRule) -> Result<Monomial> {
    rule(&table_label(l, kind), kind, &local_regime(w, sigma)?)
}

/// Edge monomials and vertex series of one summand, in edge and vertex order.
pub fn chart_terms(
    x: &ToricCY,
    assignment: &[Partition2D],
    sigma: &SlopeRegime,
    order: i64,
    rule: EdgeRule,
) -> Result<(Vec<Monomial>, Vec<Series>)> {
    let mut edges = Vec::with_capacity(x.edges.len());
    for (e, l) in x.edges.iter().zip(assignment.iter()) {
        let w = edge_first(&x.vertices[e.a], e.axis_a);
        edges.push(edge_term(l, e.kind, &w, sigma, rule)?);
    }
    let t = tq_template(order);
    let mut verts = Vec::with_capacity(x.vertices.len());
    for (w, legs) in x.vertices.iter().zip(x.legs(assignment)) {
        let s = local_regime(w, sigma)?;
        verts.push(vertex_limit(&legs[0], &legs[1], &legs[2], &s, &t)?);
    }
    Ok((edges, verts))
}

/// `(t, q)` part of one summand, certified to `order`.
fn summand(x: &ToricCY, assignment: &[Partition2D], sigma: &SlopeRegime, order: i64, rule: EdgeRule) -> Result<Series> {
    let t = tq_template(order);
    let mut edge = Monomial::ONE;
    for (e, l) in x.edges.iter().zip(assignment.iter()) {
        let w = edge_first(&x.vertices[e.a], e.axis_a);
        edge = edge * edge_term(l, e.kind, &w, sigma, rule)?;
    }
    let shift = edge.get(VT) as i64 + edge.get(VQ) as i64;
    let legs = x.legs(assignment);
    let regimes = x.vertices.iter().map(|w| local_regime(w, sigma)).collect::<Result<Vec<_>>>()?;
    // vertex products can dip below degree 0, so ask for more than `order`
    let tq = with_headroom(&t, shift.abs(), |tm| {
        let mut acc = Series::one(tm).truncated(tm);
        for (l, s) in legs.iter().zip(regimes.iter()) {
            acc = acc.mul(&vertex_limit(&l[0], &l[1], &l[2], s, tm)?);
        }
        Ok(acc.shift(edge))
    })?;
    Ok(tq)
}

/// The reduced preferred limit as a sum over edge assignments: Kähler degree
/// at most `d`, `(t, q)` degree at most `order`.
pub fn reduced_limit_vertex_sum(x: &ToricCY, sigma: &SlopeRegime, d: u32, order: i64) -> Result<Series> {
    reduced_limit_vertex_sum_with(x, sigma, d, order, edge_limit)
}

pub fn reduced_limit_vertex_sum_with(x: &ToricCY, sigma: &SlopeRegime, d: u32, order: i64, rule: EdgeRule) -> Result<Series> {
    let assignments = edge_assignments(x.edges.len(), d);
    let parts: Vec<Result<(Monomial, Series)>> = par::map_collect(assignments, |a| {
        Ok((kahler_monomial(x, &a), summand(x, &a, sigma, order, rule)?))
    });
    let g = expanded_template(d as i64, order);
    let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for p in parts {
        let (k, s) = p?;
        for (m, c) in s.terms() {
            let e = terms.entry(k * *m).or_default();
            *e += c;
        }
    }
    Ok(Series::from_terms(&g, terms))
}
