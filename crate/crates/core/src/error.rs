use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex index is outside `0..n`.
    VertexOutOfRange { v: u32, n: usize },
    /// An edge violates the size bound or is empty.
    BadEdge(String),
    /// Operation requires a uniform hypergraph.
    NotUniform,
    /// Clique order must exceed the uniformity.
    BadOrder { q: usize, r: usize },
    /// A listed clique is not a clique of the ground hypergraph.
    CliqueNotInGround(String),
    /// Divisibility condition violated.
    NotDivisible(String),
    /// Configured enumeration cap exceeded.
    CapExceeded { needed: u64, cap: u64 },
    /// Search budget exhausted without a decision.
    BudgetExhausted,
    /// No solution exists (proven).
    NoSolution(String),
    /// Exact LP reports infeasibility.
    Infeasible(String),
    /// A target value lies outside its admissible range.
    TargetOutOfRange(String),
    /// Generic precondition violation.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { v, n } => write!(f, "vertex {v} out of range 0..{n}"),
            Error::BadEdge(s) => write!(f, "bad edge: {s}"),
            Error::NotUniform => write!(f, "hypergraph is not uniform"),
            Error::BadOrder { q, r } => write!(f, "clique order q={q} must exceed uniformity r={r}"),
            Error::CliqueNotInGround(s) => write!(f, "clique not in ground: {s}"),
            Error::NotDivisible(s) => write!(f, "not divisible: {s}"),
            Error::CapExceeded { needed, cap } => write!(f, "cap exceeded: needed {needed}, cap {cap}"),
            Error::BudgetExhausted => write!(f, "search budget exhausted"),
            Error::NoSolution(s) => write!(f, "no solution: {s}"),
            Error::Infeasible(s) => write!(f, "infeasible: {s}"),
            Error::TargetOutOfRange(s) => write!(f, "target out of range: {s}"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
