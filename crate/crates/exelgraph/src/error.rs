//! Crate-wide error type.

use crate::graph::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(String),
    #[error("graph is not analyzable: {0}")]
    NotAnalyzable(String),
    #[error("graph has {vertices} vertices, above the enumeration bound {bound}")]
    BoundExceeded { vertices: usize, bound: usize },
    #[error("requested depth {given} is below the operator's natural depth {required}")]
    DepthTooSmall { required: usize, given: usize },
    /// Two independent computations of the same quantity disagreed.
    #[error("property violation: {0}")]
    PropertyViolation(String),
}
