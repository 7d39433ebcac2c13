use vertexlab::algebra::Monomial;
use vertexlab::dt::*;
use vertexlab::partitions::Partition2D;
use vertexlab::vertex::{edge_limit, refined_vertex, tq_template, Series};

fn tq(t2: u64, q2: u64) -> Monomial {
    Monomial::doubled(&[(VT, t2 as i32), (VQ, q2 as i32)])
}

fn n2(l: &Partition2D) -> u64 {
    l.norm2()
}

/// The sixteen edge and vertex terms of the first geometry under regime A,
/// written out by hand.
fn fixture(a: &[Partition2D], order: i64) -> (Vec<Monomial>, Vec<Series>) {
    let [k1, k4, mu1, la1, la2, mu2, k2, k3] = [&a[0], &a[1], &a[2], &a[3], &a[4], &a[5], &a[6], &a[7]];
    let tr = |l: &Partition2D| l.conjugate();
    let e = Partition2D::empty();
    let edges = vec![
        tq(n2(&tr(k1)), n2(k1)),
        tq(n2(k4), n2(&tr(k4))),
        tq(0, 2 * n2(mu1)),
        tq(n2(la1) + la1.size(), n2(la1) - la1.size()),
        tq(n2(la2) - la2.size(), n2(la2) + la2.size()),
        tq(2 * n2(mu2), 0),
        tq(n2(&tr(k2)), n2(k2)),
        tq(n2(k3), n2(&tr(k3))),
    ];
    let g = tq_template(order);
    let (t, q) = ((VT, VQ), (VQ, VT));
    let c = |l: &Partition2D, m: &Partition2D, n: &Partition2D, v| refined_vertex(l, m, n, v, &g).unwrap();
    let verts = vec![
        c(&tr(k1), &e, &e, q),
        c(&e, &tr(k4), &e, t),
        c(k1, la1, &tr(mu1), t),
        c(&tr(la2), k4, mu1, q),
        c(&tr(la1), k2, mu2, t),
        c(k3, la2, &tr(mu2), q),
        c(&e, &tr(k2), &e, q),
        c(&tr(k3), &e, &e, t),
    ];
    (edges, verts)
}

#[test]
fn first_geometry_matches_the_hand_fixture() {
    let x = make_x1().unwrap();
    let sigma = Regime::A.slope();
    for a in edge_assignments(x.edges.len(), 2) {
        let (e, v) = chart_terms(&x, &a, &sigma, 3, edge_limit).unwrap();
        let (fe, fv) = fixture(&a, 3);
        assert_eq!(e, fe, "edges at {:?}", a);
        for (i, (s, f)) in v.iter().zip(fv.iter()).enumerate() {
            assert_eq!(s.first_difference(f), None, "vertex {} at {:?}", i, a);
        }
    }
}

#[test]
fn regime_b_charts_are_tabulated() {
    let x = make_x1().unwrap();
    for w in x.vertices.iter() {
        local_regime(w, &Regime::B.slope()).unwrap();
    }
}

fn vertex_vs_closed(x: &ToricCY, geom: Geometry, r: Regime, d: u32, order: i64) {
    let vs = reduced_limit_vertex_sum(x, &r.slope(), d, order).unwrap();
    let cf = closed_form_limit(geom, r, &kahler_template(d as i64)).unwrap();
    let ex = expand_series(&cf, d as i64, order).unwrap();
    assert!(!vs.is_empty());
    assert_eq!(vs.first_difference(&ex), None, "{:?} {:?}", geom, r);
}

#[test]
fn second_geometry_vertex_sum_matches_closed_forms() {
    let x = make_x2().unwrap();
    vertex_vs_closed(&x, Geometry::X2, Regime::A, 2, 4);
    vertex_vs_closed(&x, Geometry::X2, Regime::B, 2, 4);
}

#[test]
fn first_geometry_vertex_sum_matches_closed_forms() {
    let x = make_x1().unwrap();
    vertex_vs_closed(&x, Geometry::X1, Regime::A, 2, 3);
    vertex_vs_closed(&x, Geometry::X1, Regime::B, 2, 3);
}


#[test]
fn slope_independence_second_geometry() {
    let r = verify_slope_independence(Geometry::X2, 2, 6).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn slope_independence_first_geometry() {
    let r = verify_slope_independence(Geometry::X1, 2, 6).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn corrupted_table_row_is_caught() {
    let r = slope_independence_with(Geometry::X1, 1, 3, corrupted_edge_rule()).unwrap();
    assert!(!r.passed);
    assert!(r.witness.is_some());
}

#[test]
fn substitution_pipeline_reaches_the_reduced_identity() {
    let r = substitution_pipeline(&PipelineOrders { nu: 2, nv: 2, m: 2 }).unwrap();
    assert!(r.passed, "{}", r);
}
