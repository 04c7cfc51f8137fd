use qtwist_hopf::HopfError;
use qtwist_repr::ReprError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BimodError {
    #[error("rank mismatch: {0}")]
    Rank(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

impl From<qtwist_core::CoreError> for BimodError {
    fn from(e: qtwist_core::CoreError) -> Self {
        BimodError::Hopf(HopfError::from(e))
    }
}
