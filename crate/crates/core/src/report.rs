//! Pass/fail outcomes of identity checks, with the first failing coefficient.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Where the sides differ, e.g. a monomial or a partition label.
    pub at: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub passed: bool,
    /// Number of coefficients or cases compared.
    pub checked: usize,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: String::from(name), passed: true, checked: 0, witness: None, notes: Vec::new() }
    }

    /// Records a failure unless one is already recorded.
    pub fn fail(&mut self, at: String, left: String, right: String) {
        if self.passed {
            self.witness = Some(Witness { at, left, right });
        }
        self.passed = false;
    }

    pub fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    /// Folds a sub-check into this report.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.witness = other.witness.map(|w| Witness { at: alloc::format!("{}: {}", other.name, w.at), ..w });
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({} checked)", if self.passed { "PASS" } else { "FAIL" }, self.name, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  at {}\n  left:  {}\n  right: {}", w.at, w.left, w.right)?;
        }
        for n in self.notes.iter() {
            write!(f, "\n  {}", n)?;
        }
        Ok(())
    }
}
