use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::monomial::MAX_VARS;

/// Variable names of one computation. Counting variables index series;
/// the rest (equivariant weights, symbolic parameters) live in coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    counting: Vec<bool>,
}

impl VarTable {
    /// `spec` lists (name, is_counting).
    pub fn new(spec: &[(&str, bool)]) -> Self {
        assert!(spec.len() <= MAX_VARS, "too many variables");
        let names: Vec<String> = spec.iter().map(|(n, _)| n.to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable {n}");
        }
        VarTable { names, counting: spec.iter().map(|(_, c)| *c).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Panicking lookup for names the caller itself registered.
    pub fn ix(&self, name: &str) -> usize {
        self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"))
    }

    pub fn is_counting(&self, i: usize) -> bool {
        self.counting[i]
    }

    pub fn counting_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.counting[i]).collect()
    }
}
