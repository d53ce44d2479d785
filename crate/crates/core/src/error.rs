use std::fmt;

use thiserror::Error;

/// A syntax error at a byte offset in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    /// Tokens that would have been accepted at `offset`; empty when the
    /// error is semantic (e.g. a logarithm of something other than `x`).
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.offset)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    /// The operator x*f'/f (and division) is undefined on the zero function.
    #[error("operator undefined on the zero function")]
    ZeroFunction,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The expression is well-formed but has no exact representation as a
    /// fraction of x^q*ln(x)^k polynomials.
    #[error("not representable: {0}")]
    NotRepresentable(String),

    /// A classification identity held but parameter extraction failed.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum NumericError {
    #[error("pole at x = {0}")]
    PoleAt(f64),

    #[error("evaluation at x = 0")]
    ZeroArgument,

    #[error("function value too close to zero at x = {0}")]
    NearZeroFunctionValue(f64),

    #[error("finite differences disagree at x = {0}; stencil too close to a pole")]
    IllConditionedStencil(f64),

    #[error("{survived} of {attempted} sample points were usable; at least {required} are required")]
    InsufficientPoints { survived: usize, attempted: usize, required: usize },

    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
