//! Crate-wide error type.

use thiserror::Error;

/// Failures raised by twistkit operations.
///
/// Validation *findings* (a relation that does not hold) are reported through
/// the report types of each module; this enum is reserved for inputs that an
/// operation refuses to process.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A requested face or simplex dimension is out of range.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    /// A vertex or horn index is out of range.
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    /// Structurally inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A complex whose matrices have the wrong shape or do not square to zero.
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    /// A graded map whose components have the wrong shape.
    #[error("malformed map: {0}")]
    MalformedMap(String),
    /// Two maps that cannot be composed or added.
    #[error("composition error: {0}")]
    Composition(String),
    /// A map of the wrong degree was supplied.
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree {
        /// Degree required by the operation.
        expected: i64,
        /// Degree of the supplied map.
        found: i64,
    },
    /// A complex lacks the elementary declaration an operation needs.
    #[error("not elementary: {0}")]
    NotElementary(String),
    /// The input has a shape the operation does not support.
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    /// A quasi-inverse was requested for a map that is not a quasi-isomorphism.
    #[error("no inverse: {0}")]
    NoInverse(String),
    /// `split_acyclic` was called on a complex with homology.
    #[error("not splittable: {0}")]
    NotSplittable(String),
    /// A labelling is missing a required entry.
    #[error("incomplete labelling: {0}")]
    Incomplete(String),
    /// Bidegree or tuple shape violation in a bigraded element.
    #[error("shape error: {0}")]
    Shape(String),
    /// A conversion was refused because its input failed validation.
    #[error("conversion refused: {0}")]
    ConversionRefused(String),
    /// The two edges of a horn do not fit together.
    #[error("horn shape error: {0}")]
    HornShape(String),
    /// A construction refused its input.
    #[error("refused: {0}")]
    Refused(String),
    /// A matrix that must be invertible is singular or not square.
    #[error("not invertible: {0}")]
    NotInvertible(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
