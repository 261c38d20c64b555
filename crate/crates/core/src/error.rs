use thiserror::Error;

use crate::ring::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid variable name `{0}`")]
    Variable(String),
    #[error("invalid partition `{0}`")]
    Partition(String),
    #[error("invalid skew shape `{0}`: {1}")]
    Skew(String, String),
    #[error("invalid permutation `{0}`")]
    Permutation(String),
    #[error("invalid set `{0}`")]
    Set(String),
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("invalid json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a zero denominator")]
    ZeroDenominator,
    #[error("polynomial is not divisible by the requested divisor")]
    NotDivisible,
    #[error("variable {0} has no numeric value in this mode")]
    Unassigned(Var),
    #[error("partition has {len} parts but only {n} variables are available")]
    LengthExceedsN { len: usize, n: usize },
    #[error("value {0} is out of range")]
    OutOfRange(i64),
    #[error("polynomial is not symmetric in x1..x{0}")]
    NotSymmetric(usize),
    #[error("assignment is degenerate: {0}")]
    DegenerateAssignment(String),
    #[error("skew shape {0} has two cells in one column")]
    NotRowShape(String),
    #[error("{inner} => {outer} is not a tangle (cells of the difference must lie in distinct rows and columns)")]
    NotTangle { inner: String, outer: String },
    #[error("Hecke elements live in different algebras (H_{0} and H_{1})")]
    MismatchedN(usize, usize),
    #[error("generator index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("insertion failed: {0}")]
    Insertion(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
