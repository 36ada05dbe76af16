use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Invalid arguments or parameters supplied by the caller.
    Usage,
    /// A key or ciphertext stream could not be parsed.
    Format,
    /// Training, recall or key generation failed numerically.
    Crypto,
    /// Underlying I/O failure.
    Io,
}

/// What went wrong while parsing a key or ciphertext stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    BadMagic,
    UnsupportedVersion(u16),
    Truncated,
    TrailingData,
    /// A header field is inconsistent with the rest of the container.
    Inconsistent(String),
}

impl std::fmt::Display for FormatErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::BadMagic => f.write_str("bad magic"),
            Self::UnsupportedVersion(v) => write!(f, "unsupported version {v}"),
            Self::Truncated => f.write_str("truncated stream"),
            Self::TrailingData => f.write_str("trailing data after end of container"),
            Self::Inconsistent(msg) => write!(f, "inconsistent container: {msg}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found} (corrupted key or state?)")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("untrainable chunk: ridge system is singular to working precision")]
    Untrainable,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("spectral radius did not converge after {iterations} iterations (best estimate {estimate})")]
    NoConvergence { estimate: f64, iterations: usize },

    #[error("raw reservoir matrix has spectral radius 0; use a larger reservoir connectivity or a different seed")]
    DegenerateReservoir,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a key file")]
    NotAKeyFile,

    #[error("unsupported key version {0}")]
    UnsupportedKeyVersion(u16),

    #[error("corrupt key: {0}")]
    CorruptKey(String),

    #[error("unmemorizable chunk: recall diverges at byte {position}")]
    Unmemorizable { position: usize },

    #[error("numerical blow-up during recall at step {step}")]
    NumericalBlowUp { step: usize },

    #[error("key/ciphertext mismatch: {0}")]
    KeyMismatch(String),

    #[error("chunk {index}: {source}")]
    Chunk {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed ciphertext at byte offset {offset}: {kind}")]
    Format { offset: u64, kind: FormatErrorKind },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn in_chunk(self, index: usize) -> Self {
        Error::Chunk {
            index,
            source: Box::new(self),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidParams(_) | Error::InvalidArgument(_) | Error::EmptyInput(_) => {
                ErrorClass::Usage
            }
            Error::NotAKeyFile
            | Error::UnsupportedKeyVersion(_)
            | Error::CorruptKey(_)
            | Error::Format { .. } => ErrorClass::Format,
            Error::Io(_) => ErrorClass::Io,
            Error::Chunk { source, .. } => source.class(),
            Error::DimensionMismatch { .. }
            | Error::Untrainable
            | Error::NotSquare { .. }
            | Error::NoConvergence { .. }
            | Error::DegenerateReservoir
            | Error::Unmemorizable { .. }
            | Error::NumericalBlowUp { .. }
            | Error::KeyMismatch(_) => ErrorClass::Crypto,
        }
    }
}
