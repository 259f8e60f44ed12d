use std::fmt;

use thiserror::Error;

use crate::conditions::ConditionReport;
use crate::semigroup::ValidationReport;

/// Position-tagged failure while reading text input (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("table is not a semigroup with zero:\n{0}")]
    Validation(ValidationReport),

    #[error("the pair relation is not an equivalence: {0}")]
    NotAnEquivalence(String),

    #[error("conditions A-D do not all hold")]
    ConditionsNotSatisfied(Box<ConditionReport>),

    #[error("not an I-order: element {0} of Q has no decomposition over the embedded semigroup")]
    NotAnIOrder(usize),

    #[error("not a primitive inverse semigroup")]
    NotPrimitiveInverse,

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("order {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("precondition not satisfied: {0}")]
    PreconditionUnverified(String),

    /// A constructed object failed one of its own post-condition checks.
    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
