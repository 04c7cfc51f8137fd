use qtwist_hopf::HopfError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("no representation image for generator {0}")]
    MissingImage(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

impl From<qtwist_core::CoreError> for ReprError {
    fn from(e: qtwist_core::CoreError) -> Self {
        ReprError::Hopf(HopfError::from(e))
    }
}
