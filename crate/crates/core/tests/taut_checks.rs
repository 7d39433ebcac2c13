use vertexlab::taut::{
    chi_series, cobordism_reconstruction, g_identity, rank2_formulas, rank2_route, specialization_routes, verify_taut, Functor,
    TautCheckOrders, TautOrders, ToricSurfaceData,
};

#[test]
fn all_tautological_checks() {
    let r = verify_taut(TautCheckOrders::default()).unwrap();
    println!("{}", r);
    assert!(r.passed, "{}", r);
}

#[test]
fn specializing_early_or_late_agrees() {
    assert!(specialization_routes(2).unwrap().passed);
}

#[test]
fn reconstruction_at_order_three() {
    let r = cobordism_reconstruction(3).unwrap();
    assert!(r.passed, "{}", r);
}

#[test]
fn rank_two_and_g() {
    for r in [rank2_formulas(3).unwrap(), g_identity(3, 3).unwrap(), rank2_route(2, 3).unwrap()] {
        assert!(r.passed, "{}", r);
    }
}

#[test]
fn exterior_powers_of_trivial_bundle_on_the_plane() {
    // χ(Λ^k O^[n]) on P2: χ(O) = 1, χ(L) = 1, so only k ≤ 1 survives.
    let x = ToricSurfaceData::p2(0);
    let s = chi_series(&x, Functor::Lambda, TautOrders { z: 3, k: 3 }).unwrap();
    for (m, c) in s.terms() {
        let k = m.get(vertexlab::taut::M) / 2;
        assert!(k <= 1, "{:?} {}", m, c);
    }
}
