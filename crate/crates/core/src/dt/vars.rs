use alloc::vec::Vec;

use crate::algebra::{Grading, VarTable};

pub use crate::vertex::{VQ, VT};

pub const U: usize = 2;
pub const V: usize = 3;
pub const M1: usize = 4;
pub const M2: usize = 5;
pub const M3: usize = 6;
pub const M4: usize = 7;

pub const KAHLER: [usize; 6] = [U, V, M1, M2, M3, M4];

pub fn dt_vars() -> VarTable {
    VarTable::new(&[
        ("t", false),
        ("q", false),
        ("u", true),
        ("v", true),
        ("m1", true),
        ("m2", true),
        ("m3", true),
        ("m4", true),
    ])
}

/// Total Kähler degree at most `d`.
pub fn kahler_template(d: i64) -> Vec<Grading> {
    alloc::vec![Grading::degree(&KAHLER, d)]
}

/// Kähler degree at most `d` and `(t, q)` degree at most `order`.
pub fn expanded_template(d: i64, order: i64) -> Vec<Grading> {
    alloc::vec![Grading::degree(&KAHLER, d), Grading::degree(&[VT, VQ], order)]
}
