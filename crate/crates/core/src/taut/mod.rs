//! Euler characteristics of tautological bundles on Hilbert schemes of points
//! on surfaces.
//!
//! Plane fixed-point sums are multiplied over the fixed points of a toric
//! surface and specialized to `t1 = t2 = 1`. Universal series come from four
//! generator surfaces, and the closed formulas for exterior and symmetric
//! powers are checked against all of it.

mod local;
mod special;
mod surface;
mod universal;
mod verify;

use crate::algebra::{Rational, RationalFunction, TruncatedSeries, VarTable};

pub use local::{chi_lambda_c2, chi_sym_c2, g_c2, inverse_euler_at, template, Functor, TautOrders};
pub use special::{generic_pairs, specialize_nonequivariant, surface_nonequivariant, to_s, value_at_one};
pub use surface::{binom, FixedPoint, GammaVector, ToricSurfaceData};
pub use universal::{chi_series, generators, reconstruct, universal_solve};
pub use verify::{
    chi_lambda_matches_f, cobordism_reconstruction, cotangent_check, exterior_binomial, g_identity, plane_sym, rank2_formulas,
    rank2_route, specialization_routes, sym_formulas, sym_stability, verify_taut, TautCheckOrders,
};

pub const T1: usize = 0;
pub const T2: usize = 1;
pub const M: usize = 2;
pub const Z: usize = 3;
pub const Y: usize = 4;
/// The single variable of `t1 = s^a, t2 = s^b`.
pub const S: usize = 5;
/// Symbolic bundle weights for plane checks.
pub const L1: usize = 6;
pub const L2: usize = 7;

/// Equivariant series: counting variables `z, m, y`, coefficients rational
/// in `t1, t2`.
pub type Series = TruncatedSeries<RationalFunction>;
pub type RatSeries = TruncatedSeries<Rational>;

pub fn taut_vars() -> VarTable {
    VarTable::new(&[
        ("t1", false),
        ("t2", false),
        ("m", true),
        ("z", true),
        ("y", true),
        ("s", false),
        ("l1", false),
        ("l2", false),
    ])
}
