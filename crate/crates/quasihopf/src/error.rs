use qtwist_core::CoreError;
use thiserror::Error;

/// Errors raised while building or transforming quasi-Hopf data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{what} has {got} entries, expected {expected}")]
    Shape { what: &'static str, got: usize, expected: usize },
    #[error("{0} must be invertible (unit order-0 part)")]
    NotInvertible(&'static str),
    #[error("twist is not counital: {0}")]
    NotCounital(String),
    #[error("no R-matrix present")]
    MissingRMatrix,
    #[error("unknown preset {0:?} (expected classical, moyal or rflux)")]
    UnknownPreset(String),
    #[error("invalid preset parameters: {0}")]
    InvalidParams(String),
}
