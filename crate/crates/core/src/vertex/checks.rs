// Report-level checks of the vertex machinery, shared by the CLI and the
// acceptance suite.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::{rat, Grading, Monomial, Rational, RationalFunction, TruncatedSeries};
use crate::characters::{ahat, balanced_limit, rigid_limit, Attraction, Character, SlopeRegime};
use crate::partitions::{enumerate_3d, partitions_of, partitions_up_to, Partition2D, Partition3D};
use crate::report::Report;
use crate::Result;

use super::boxcount::{box_count, box_count_normalized, BoxRoute};
use super::edge::{edge_character, edge_limit, edge_limit_exact, EdgeKind};
use super::nekrasov::vertex_character_finite;
use super::refined::{tq_template, vertex_limit};
use super::schur::skew_schur_finite;

/// The four rows of the normalized-vertex table.
pub const TABLE_ROWS: [&str; 4] = ["r1>>r3>0>>r2", "r1>>0>r3>>r2", "r2>>r3>0>>r1", "r2>>0>r3>>r1"];

/// All twelve preferred regimes.
pub fn preferred_regimes() -> Vec<SlopeRegime> {
    let mut out = Vec::new();
    for p in 0..3 {
        for k in 0..3 {
            if p != k {
                for s in [1, -1] {
                    out.push(SlopeRegime::preferred(p, 1, k, s).expect("distinct axes"));
                }
            }
        }
    }
    out
}

/// Characters of the finite configurations with `1 ≤ |π| ≤ n`.
pub fn finite_vertex_characters(n: u32) -> Result<Vec<(Partition3D, Character)>> {
    let e = Partition2D::empty();
    let mut out = Vec::new();
    for pi in enumerate_3d([e.clone(), e.clone(), e], n as i64) {
        if !pi.extra().is_empty() {
            let v = vertex_character_finite(&pi)?;
            out.push((pi, v));
        }
    }
    Ok(out)
}

/// No weight of any character is fixed by the slope.
pub fn is_generic(chars: &[Character], r: [i64; 3]) -> bool {
    let Ok(s) = SlopeRegime::explicit(r) else { return false };
    chars.iter().all(|v| v.weights().all(|(w, _)| s.sign(&w) != Attraction::Fixed))
}

fn pattern(chars: &[Character], s: &SlopeRegime) -> Vec<Attraction> {
    chars.iter().flat_map(|v| v.weights().map(|(w, _)| s.sign(&w)).collect::<Vec<_>>()).collect()
}

/// A slope that is not a multiple of `r` but attracts and repels the same
/// weights, if a small perturbation of a multiple finds one.
pub fn chamber_partner(chars: &[Character], r: [i64; 3]) -> Option<[i64; 3]> {
    let s = SlopeRegime::explicit(r).ok()?;
    let want = pattern(chars, &s);
    for k in 2..64 {
        for d in [[1, -1, 0], [0, 1, -1], [-1, 0, 1], [1, 0, -1], [0, -1, 1], [-1, 1, 0]] {
            let c = [k * r[0] + d[0], k * r[1] + d[1], k * r[2] + d[2]];
            let t = SlopeRegime::explicit(c).ok()?;
            if is_generic(chars, c) && pattern(chars, &t) == want {
                return Some(c);
            }
        }
    }
    None
}

/// `lim â(V_π) = (-κ^{1/2})^{index}` for `|π| ≤ n` at each slope, and the
/// limit agrees at a second slope of the same chamber.
pub fn verify_rigidity(n: u32, slopes: &[[i64; 3]]) -> Result<Report> {
    let pis = finite_vertex_characters(n)?;
    let chars: Vec<Character> = pis.iter().map(|(_, v)| v.clone()).collect();
    let mut r = Report::new(&format!("rigidity of â(V_π), |π| ≤ {}, {} slopes", n, slopes.len()));
    let half = Monomial::doubled(&[(0, 1), (1, 1), (2, 1)]);
    let single = [RationalFunction::monomial(half).scale(&rat(-1)), RationalFunction::monomial(half.inv()).scale(&rat(-1))];
    let mut partners = 0;
    for &sl in slopes {
        let s = SlopeRegime::explicit(sl)?;
        let other = chamber_partner(&chars, sl);
        if other.is_some() {
            partners += 1;
        }
        for (pi, v) in pis.iter() {
            let a = ahat(v)?;
            let lim = balanced_limit(&a, &s)?;
            let want = RationalFunction::from_poly(rigid_limit(v, &s)?);
            r.checked += 1;
            if lim != want {
                r.fail(format!("{:?} at {:?}", pi.extra(), sl), format!("{:?}", lim), format!("{:?}", want));
            }
            if pi.extra().len() == 1 && !single.contains(&lim) {
                r.fail(format!("single box at {:?}", sl), format!("{:?}", lim), String::from("-κ^{±1/2}"));
            }
            if let Some(o) = other {
                r.checked += 1;
                let lo = balanced_limit(&a, &SlopeRegime::explicit(o)?)?;
                if lo != lim {
                    r.fail(format!("{:?} at {:?} vs {:?}", pi.extra(), sl, o), format!("{:?}", lim), format!("{:?}", lo));
                }
            }
        }
    }
    r.note(format!("{} configurations; {} slopes compared against a second slope of their chamber", pis.len(), partners));
    Ok(r)
}

fn legs_up_to(n: u32) -> Vec<[Partition2D; 3]> {
    let ps = partitions_up_to(n);
    let mut out = Vec::new();
    for a in ps.iter() {
        for b in ps.iter() {
            for c in ps.iter() {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// On the four table rows and legs of size at most `leg`: the two box-count
/// routes agree, the normalized count equals the refined vertex, and the
/// count is symmetric under reflection through the diagonal plane.
pub fn verify_vertex(order: i64, leg: u32) -> Result<Report> {
    let g = tq_template(order);
    let mut r = Report::new(&format!("box counting vs refined vertex, legs ≤ {}, order {}", leg, order));
    let mirror = |s: &str| -> Option<&str> {
        match s {
            "r2>>r3>0>>r1" => Some("r1>>r3>0>>r2"),
            "r2>>0>r3>>r1" => Some("r1>>0>r3>>r2"),
            _ => None,
        }
    };
    for row in TABLE_ROWS {
        let s = SlopeRegime::parse(row)?;
        for legs in legs_up_to(leg) {
            let at = format!("{} {} {} {}", row, legs[0], legs[1], legs[2]);
            let a = box_count(legs.clone(), &s, order, BoxRoute::Index)?;
            let b = box_count(legs.clone(), &s, order, BoxRoute::Product)?;
            r.checked += 3;
            if let Some((m, x, y)) = a.first_difference(&b) {
                r.fail(format!("routes {} {:?}", at, m.0), x.to_string(), y.to_string());
            }
            let bc = box_count_normalized(legs.clone(), &s, order, BoxRoute::Index)?;
            let c = vertex_limit(&legs[0], &legs[1], &legs[2], &s, &g)?;
            if let Some((m, x, y)) = bc.first_difference(&c) {
                r.fail(format!("normalized {} {:?}", at, m.0), x.to_string(), y.to_string());
            }
            if let Some(m) = mirror(row) {
                let [l, mu, nu] = &legs;
                let refl = box_count([mu.conjugate(), l.conjugate(), nu.conjugate()], &SlopeRegime::parse(m)?, order, BoxRoute::Index)?;
                if let Some((m, x, y)) = a.first_difference(&refl) {
                    r.fail(format!("reflection {} {:?}", at, m.0), x.to_string(), y.to_string());
                }
            }
        }
    }
    Ok(r)
}

/// Tabulated edge limits against the exact index for `1 ≤ |λ| ≤ n` in
/// every regime the tables cover; Serre symmetry of the edge characters and
/// the arm sum `Σ(2a+1) = ‖λ‖²`.
pub fn verify_edge_tables(n: u32) -> Result<Report> {
    let mut r = Report::new(&format!("edge tables vs exact index, |λ| ≤ {}", n));
    let w = [Monomial::var(0), Monomial::var(1), Monomial::var(2)];
    let mut tabulated = 0;
    for kind in [EdgeKind::CONIFOLD, EdgeKind::SURFACE] {
        for s in preferred_regimes() {
            for k in 1..=n {
                for l in partitions_of(k) {
                    match edge_limit(&l, kind, &s) {
                        Ok(m) => {
                            tabulated += 1;
                            r.checked += 1;
                            let e = edge_limit_exact(&l, kind, &s)?;
                            if m != e {
                                r.fail(format!("{:?} {} λ={}", kind, s, l), format!("{:?}", m.0), format!("{:?}", e.0));
                            }
                        }
                        Err(crate::Error::Table(_)) if kind == EdgeKind::SURFACE => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        for k in 0..=n {
            for l in partitions_of(k) {
                r.checked += 1;
                if !edge_character(&l, kind, w, 0)?.serre_check() {
                    r.fail(format!("{:?} λ={} Serre symmetry", kind, l), String::from("false"), String::from("true"));
                }
                let s: i64 = l.arms_legs().iter().map(|(_, (a, _))| 2 * a + 1).sum();
                if s != l.norm2() as i64 {
                    r.fail(format!("arm sum λ={}", l), s.to_string(), l.norm2().to_string());
                }
            }
        }
    }
    r.note(format!("{} tabulated entries compared", tabulated));
    Ok(r)
}

/// Both skew Cauchy identities for `|η_i| ≤ 2`, three letters per alphabet,
/// through `u^{order}`.
pub fn verify_schur_identities(order: u32) -> Result<Report> {
    // letters x = vars 0..2, y = vars 3..5, u = var 6
    let g = alloc::vec![Grading::degree(&[6], order as i64)];
    let u = Monomial::var(6);
    let x: Vec<Monomial> = (0..3).map(Monomial::var).collect();
    let y: Vec<Monomial> = (3..6).map(Monomial::var).collect();
    let ux: Vec<Monomial> = x.iter().map(|m| *m * u).collect();
    let uy: Vec<Monomial> = y.iter().map(|m| *m * u).collect();
    type S = TruncatedSeries<Rational>;
    let s = |l: &Partition2D, e: &Partition2D, a: &[Monomial]| skew_schur_finite(l, e, a, &g);
    let upow = |n: u64| S::term(&g, u.pow(n as i32), rat(1));
    let sum = |f: &dyn Fn(&Partition2D) -> S| {
        let mut acc = S::zero(&g);
        for l in partitions_up_to(order + 2) {
            acc = acc.add(&f(&l).truncated(&g));
        }
        acc
    };
    let mut cauchy = S::one(&g);
    let mut dual = S::one(&g);
    for a in x.iter() {
        for b in y.iter() {
            cauchy = cauchy.mul(&S::geometric(&g, rat(1), *a * *b * u)?);
            dual = dual.mul(&S::from_terms(&g, [(Monomial::ONE, rat(1)), (*a * *b * u, rat(1))]));
        }
    }
    let mut r = Report::new(&format!("skew Cauchy identities to u^{}", order));
    for e1 in partitions_up_to(2) {
        for e2 in partitions_up_to(2) {
            let lhs = sum(&|l| upow(l.size()).mul(&s(l, &e1, &x)).mul(&s(l, &e2, &y)));
            let rhs = cauchy.mul(&sum(&|l| upow(l.size()).mul(&s(&e1, l, &uy)).mul(&s(&e2, l, &ux))));
            r.checked += lhs.len().max(rhs.len());
            if let Some((m, a, b)) = lhs.first_difference(&rhs) {
                r.fail(format!("first, η = {} {} at {:?}", e1, e2, m.0), a.to_string(), b.to_string());
            }
            let lhs = sum(&|l| upow(l.size()).mul(&s(l, &e1, &x)).mul(&s(&l.conjugate(), &e2, &y)));
            let rhs = dual.mul(&sum(&|l| upow(l.size()).mul(&s(&e1.conjugate(), &l.conjugate(), &uy)).mul(&s(&e2.conjugate(), l, &ux))));
            r.checked += lhs.len().max(rhs.len());
            if let Some((m, a, b)) = lhs.first_difference(&rhs) {
                r.fail(format!("second, η = {} {} at {:?}", e1, e2, m.0), a.to_string(), b.to_string());
            }
        }
    }
    Ok(r)
}
