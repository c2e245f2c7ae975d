use std::path::PathBuf;

use crate::wordnet::SynsetId;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A required input file is absent.
    #[error("missing {name} in {dir}")]
    MissingFile { name: &'static str, dir: PathBuf },

    /// A line in a knowledge-base or key file could not be parsed.
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    /// A corpus document violates the expected XML schema.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    /// A synset id was requested that the knowledge base does not contain.
    #[error("unknown synset {0}")]
    UnknownSynset(SynsetId),

    /// Caller passed an argument outside an operation's contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Non-finite objective, gradient, or weight during inference.
    #[error("numerical error in document {doc}: {message}")]
    Numerical { doc: String, message: String },

    /// Internal model invariant violated.
    #[error("model error: {0}")]
    Model(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
