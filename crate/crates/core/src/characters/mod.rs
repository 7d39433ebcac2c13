//! Torus characters, slopes, limits and the plethystic exponential.

mod character;
mod limits;
mod pleth;
mod slope;

pub use character::{char_vars, Character, T1, T2, T3};
pub use limits::{ahat, balanced_limit, index, rigid_limit};
pub use pleth::{pleth_sym_finite, pleth_sym_series, verify_partition_counts};
pub use slope::{Attraction, SlopeRegime};
