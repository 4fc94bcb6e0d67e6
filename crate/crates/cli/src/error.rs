use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {kind}")]
    Format { path: PathBuf, kind: FormatError },
    #[error(transparent)]
    Core(#[from] nullframe_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short stable class name for machine parsing.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Format {
                kind: FormatError::InvalidSecret(e),
                ..
            } => Error::Core(e.clone()).class(),
            Error::Format { .. } => "format",
            Error::Core(e) => match e {
                nullframe_core::Error::CapacityExceeded { .. }
                | nullframe_core::Error::NoCapacity
                | nullframe_core::Error::NoCapacityAtTolerance => "capacity",
                nullframe_core::Error::LengthMismatch { .. } => "dimension",
                _ => "invalid",
            },
            Error::Usage(_) => "usage",
            Error::Csv(_) => "io",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, kind: FormatError) -> Self {
        Error::Format {
            path: path.into(),
            kind,
        }
    }
}

/// Structured reader failures; each names the offending line, key or offset.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("empty signal")]
    EmptySignal,
    #[error("line {line}: cannot parse {text:?} as a number")]
    BadNumber { line: usize, text: String },
    #[error("line {line}: non-finite value")]
    NonFinite { line: usize },
    #[error("not a coefficient file")]
    BadMagic,
    #[error("unsupported coefficient format version {0}")]
    BadVersion(u8),
    #[error("truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("length mismatch: header says M = {declared}, payload holds {extra} extra bytes")]
    TrailingBytes { declared: u32, extra: usize },
    #[error("coefficient at offset {offset} is not finite")]
    NonFiniteCoefficient { offset: usize },
    #[error("line {line}: expected key=value")]
    NotKeyValue { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key {0:?}")]
    MissingKey(&'static str),
    #[error("key {key:?}: cannot parse {value:?}")]
    BadValue { key: &'static str, value: String },
    #[error("invalid secret: {0}")]
    InvalidSecret(nullframe_core::Error),
}
