use thiserror::Error;

/// Errors raised by the scalar, series and tensor layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("leg counts differ: {0} vs {1}")]
    LegMismatch(usize, usize),
    #[error("invalid leg positions {positions:?} for {legs} legs")]
    InvalidPositions { positions: Vec<usize>, legs: usize },
    #[error("element has a nonzero hbar-order-0 part")]
    NonzeroOrderZero,
    #[error("order-0 part is not the unit")]
    NonUnitOrderZero,
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("bracket [{a}, {b}] contains {offender}, which does not precede both inputs")]
    Inadmissible { a: String, b: String, offender: String },
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("elements belong to different Lie presentations")]
    PresentationMismatch,
}
