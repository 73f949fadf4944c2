use thiserror::Error;

/// Errors raised by the counting pipeline.
///
/// Variants split into two families: input errors (bad text, ideals that do
/// not live in the requested partition, budgets) and internal consistency
/// failures, which mean a formula disagreed with an identity it must satisfy.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial division left a nonzero remainder: ({num}) / ({den})")]
    NonExactDivision { num: String, den: String },

    #[error("expansion produced a negative power of q (exponent {exponent}, factors sum {factors})")]
    NegativeExponent { exponent: u64, factors: u64 },

    #[error("intersection needs a row context")]
    MissingContext,

    #[error("ideal {lower} is not contained in {upper}")]
    NotComparable { lower: String, upper: String },

    #[error("ideal {ideal} has a maximal point off the rows of partition {partition}")]
    IdealOutOfContext { ideal: String, partition: String },

    #[error("ideal {ideal} is not in the lattice of {context}")]
    ContextMismatch { ideal: String, context: String },

    #[error("n_lambda for {partition} is {poly}, expected monic of degree {expected}")]
    DegreeMismatch {
        partition: String,
        poly: String,
        expected: usize,
    },

    #[error("expected integer coefficients, got {0}")]
    NonIntegerResult(String),

    #[error("mass check failed for {what}: got {got}, expected {expected}")]
    MassMismatch {
        what: String,
        got: String,
        expected: String,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for failures that indicate a bug in the pipeline rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonExactDivision { .. }
                | Error::NegativeExponent { .. }
                | Error::DegreeMismatch { .. }
                | Error::NonIntegerResult(_)
                | Error::MassMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
