use thiserror::Error;

/// Reasons a value sequence fails to be a surjective pistol.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PistolError {
    #[error("a pistol needs a positive, even number of values (got {0})")]
    BadLength(usize),
    #[error("f({position}) = {value} is not even")]
    OddValue { position: usize, value: usize },
    #[error("f({position}) = {value} lies outside the codomain {{2, ..., {max}}}")]
    OutOfCodomain {
        position: usize,
        value: usize,
        max: usize,
    },
    #[error("f({position}) = {value} is smaller than {position}")]
    BelowPosition { position: usize, value: usize },
    #[error("value {0} has no preimage")]
    NotSurjective(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid pistol: {0}")]
    InvalidPistol(#[from] PistolError),
    /// A property the construction guarantees did not hold. `property` names it.
    #[error("invariant violated ({property}): {detail}")]
    Invariant {
        property: &'static str,
        detail: String,
    },
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invariant(property: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            property,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
