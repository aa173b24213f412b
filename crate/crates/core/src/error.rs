use thiserror::Error;

use crate::connect::MarkedIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionError { expected: usize, found: usize },
    #[error("malformed rational literal {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("index {index} out of range 1..={dim}")]
    IndexError { index: usize, dim: usize },
    #[error("duplicate entry for {0:?}")]
    DuplicateEntry(Vec<usize>),
    #[error("zero coefficient for {0:?}")]
    ZeroCoefficient(Vec<usize>),
    #[error("dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("bracket violates the right Leibniz identity at ({0}, {1}, {2})")]
    NotLeibniz(usize, usize, usize),
    #[error("[[e{0}, e{1}], e{2}] is not a multiple of a single basis vector")]
    NotMultiplicative(usize, usize, usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("ideal is not spanned by basis vectors (reduced row {row})")]
    NotAdapted { row: String },
    #[error("declared ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("nonzero product {{e{0}, e{1}, e{2}}} contradicts the split")]
    InconsistentSplit(usize, usize, usize),
    #[error("connection element {0} lies outside J and its barred copy")]
    NotReversible(MarkedIndex),
    #[error("witness does not replay: {0}")]
    InvalidWitness(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("entry ({0}, {1}, {2}) leaks out of the class with id {3}")]
    ConfinementError(usize, usize, usize, usize),
    #[error("decomposition theorem violated: {0}")]
    TheoremViolation(String),
    #[error("dimension {dim} exceeds the oracle cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error(transparent)]
    Connect(#[from] ConnectError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    System(#[from] SystemError),
}
