use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The construction of `P*(n, d)` needs the polygon size to be integral.
    #[error(
        "P*({n},{d}) requires that floor(d/2) = {divisor} is a divisor of {} = {target}, \
         with at least 3 constraints per polygon",
        if *.d % 2 == 0 { "n" } else { "n-1" }
    )]
    Divisibility { n: usize, d: usize, divisor: usize, target: usize },

    #[error("the polyhedron is empty")]
    Infeasible,

    #[error("the polyhedron is unbounded")]
    Unbounded,

    #[error("the polyhedron is not pointed (its lineality space is nonzero)")]
    NotPointed,

    #[error("the system has redundant constraints at indices {0:?}")]
    Redundant(Vec<usize>),

    #[error("the polytope is not simple")]
    NotSimple,

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("could not draw a generic objective after {0} attempts")]
    RedrawLimit(usize),
}
