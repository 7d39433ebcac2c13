use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A factor `1 - w` with `w = 1`.
    DegenerateFactor,
    /// No grading orients `1/(1 - w)` as a power series.
    Direction(String),
    /// A substitution sent a denominator weight to 1.
    Pole(String),
    /// A monomial is off the sublattice an operation needs.
    Lattice(String),
    /// Argument outside the operation's domain.
    Domain(String),
    /// A slope fixes some weight of the character.
    NonGeneric(String),
    /// The limit of a rational function does not exist.
    Divergent(String),
    /// A regime or edge kind with no table row.
    Table(String),
    /// Internal invariant broken; signals a bug upstream.
    Invariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateFactor => write!(f, "degenerate factor (1 - 1)"),
            Error::Direction(s) => write!(f, "no expansion direction: {s}"),
            Error::Pole(s) => write!(f, "pole: {s}"),
            Error::Lattice(s) => write!(f, "off lattice: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::NonGeneric(s) => write!(f, "slope not generic: {s}"),
            Error::Divergent(s) => write!(f, "limit diverges: {s}"),
            Error::Table(s) => write!(f, "no table entry: {s}"),
            Error::Invariant(s) => write!(f, "invariant violated: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
