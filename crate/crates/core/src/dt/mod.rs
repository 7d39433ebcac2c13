//! Preferred limits of the DT partition function on two toric Calabi–Yau
//! threefolds: the vertex-formalism sum, the closed forms, slope independence
//! and the substitution into Hilbert scheme series.

mod closed;
mod geometry;
mod limit;
mod pipeline;
mod vars;
mod verify;

pub use closed::{
    btop_boxes, closed_form_limit, closed_form_summands, curly_log, evaluate, evaluate_summand, expand_rf, expand_series,
    max_degree, power_sum, ClosedSummand, Curly, Geometry, RSeries, Regime,
};
pub use geometry::{
    edge_first, kahler_monomial, kahler_slots, local_regime, make_x1, make_x2, weight_shift, BoundedEdge, Frame,
    Orientation, ToricCY,
};
pub use limit::{chart_terms, edge_assignments, reduced_limit_vertex_sum, reduced_limit_vertex_sum_with, EdgeRule};
pub use pipeline::{second_geometry_substituted, specialize, substituted_side, substitution_pipeline, PipelineOrders};
pub use vars::{dt_vars, expanded_template, kahler_template, KAHLER, M1, M2, M3, M4, U, V, VQ, VT};
pub use verify::{
    corrupted_edge_rule, geometry, slope_independence_with, verify_degree_zero, verify_edge_consistency,
    verify_slope_independence,
};
