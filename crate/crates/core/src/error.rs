//! Error type shared across the library.
//!
//! `Error` covers validation failures: malformed values, mismatched contexts,
//! and operations applied to operands they are not defined on. Mathematical
//! verdicts (no supremum, no matching shift, not Cauchy, ...) are not errors;
//! they are returned as ordinary result enums by the operations concerned.

use thiserror::Error;

/// Validation and usage errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by an exactly-zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// Two values of different ambient dimension were combined.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Two values from incompatible contexts (quadratic field, pattern kind,
    /// alphabet, index set, declared radius) were combined.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// An operation requiring a finite pattern received a generator-backed
    /// (infinite) one without a bounding window.
    #[error("unbounded operand: {0}")]
    UnboundedOperand(String),

    /// An operation requiring a bounded region received an unbounded one.
    #[error("unbounded region: {0}")]
    UnboundedRegion(String),

    /// A family handed to `supremum` fails pairwise compatibility.
    #[error("incompatible family: members {i} and {j}: {detail}")]
    IncompatibleFamily { i: usize, j: usize, detail: String },

    /// A pattern value violates its space's invariants.
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    /// A generator description violates its invariants.
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    /// A literal or JSON document failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A query parameter (radius, bound, schedule length) is out of range.
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// An iterative search hit its safety budget before reaching a verdict.
    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),
}

/// Shorthand used throughout the crate.
pub type Result<V> = std::result::Result<V, Error>;
