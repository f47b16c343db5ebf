use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Well-shaped input that breaks a structural requirement.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("generator {index} of the smaller subspace lies outside the larger one")]
    NotContained { index: usize },

    #[error("unsupported cochain degree {0} (only 1 and 2 are defined)")]
    UnsupportedDegree(usize),

    /// A mathematical identity failed; the report names every violation.
    #[error("{0}")]
    Failed(Report),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of the mathematics (as opposed to malformed input).
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::Failed(_) | Error::Singular(_) | Error::NotContained { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
