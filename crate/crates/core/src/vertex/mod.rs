//! Refined vertex, skew Schur functions, edge terms and the box-counting
//! oracle for preferred limits.

mod boxcount;
mod checks;
mod edge;
mod nekrasov;
mod refined;
mod schur;

pub use boxcount::{box_count, box_count_normalized, box_term, psi_nu, psi_sigma, w_char, BoxRoute, Tq};
pub use checks::{
    chamber_partner, finite_vertex_characters, is_generic, preferred_regimes, verify_edge_tables, verify_rigidity, verify_schur_identities,
    verify_vertex, TABLE_ROWS,
};
pub use edge::{edge_character, edge_euler, edge_limit, edge_limit_exact, table_label, tangent_pair, EdgeKind};
pub use nekrasov::{
    nekrasov_box_side, nekrasov_check, nekrasov_closed_form, nekrasov_vars, vertex_character_finite, QV,
};
pub(crate) use refined::with_headroom;
pub use refined::{empty_vertex_series, refined_vertex, tq_template, tq_vars, vertex_limit, VQ, VT};
pub use schur::{complete_homogeneous, skew_schur, skew_schur_finite, Series, SpecializedAlphabet};
