use thiserror::Error;

use crate::parse::ParseError;

/// Everything that stops a command before its checks run; all map to exit
/// code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Hopf(#[from] qtwist_hopf::HopfError),
    #[error(transparent)]
    Repr(#[from] qtwist_repr::ReprError),
    #[error(transparent)]
    Bimod(#[from] qtwist_bimod::BimodError),
}
