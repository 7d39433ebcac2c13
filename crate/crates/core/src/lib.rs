//! Exact computations for preferred-slope limits of K-theoretic DT partition
//! functions on toric Calabi–Yau threefolds, and for tautological bundles on
//! Hilbert schemes of points on toric surfaces.
//!
//! Everything is exact: rationals are arbitrary precision and half-integer
//! exponents are stored doubled. The crate is `no_std` + `alloc` unless the
//! `std` feature is enabled; `parallel` adds rayon-backed reductions.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod characters;
pub mod dt;
pub mod hilb;
pub mod partitions;
pub mod report;
pub mod taut;
pub mod vertex;

mod error;
mod par;

pub use error::{Error, Result};
