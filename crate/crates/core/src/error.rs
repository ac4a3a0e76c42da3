use thiserror::Error;

use crate::diffset::SetClassification;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    /// A property the construction is supposed to guarantee did not hold.
    #[error("construction failure: {reason}")]
    ConstructionFailure {
        reason: String,
        /// Offending pair of member indices, when the failure is pairwise.
        witness: Option<(usize, usize)>,
        /// Measured classification, when the failure is a set classification.
        measured: Option<SetClassification>,
    },

    #[error("coset pattern invalid: {0}")]
    PatternInvalid(String),

    #[error("pattern search exhausted for f = {0}")]
    SearchExhausted(u32),

    #[error("tightness undefined: lower bound is vacuous for K = {k}, M = {m}")]
    UndefinedTightness { k: usize, m: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn failure(reason: impl Into<String>) -> Self {
        Error::ConstructionFailure {
            reason: reason.into(),
            witness: None,
            measured: None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
