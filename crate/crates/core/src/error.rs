use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller violated an operation's precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("{path}: line {line}: {message}")]
    Input {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// Malformed index file; `offset` is the byte position where decoding failed.
    #[error("index format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("{0}")]
    Lossless(Box<LosslessViolation>),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A method's match set differed from the naive scan. Match lists are
/// `(word id, distance)` pairs.
#[derive(Debug, Error)]
#[error(
    "lossless check failed for query {query:?} (d={d}, m={m}, seed={seed}): \
     {method} returned {got:?}, naive scan returned {expected:?}"
)]
pub struct LosslessViolation {
    pub method: String,
    pub query: String,
    pub d: u32,
    pub m: String,
    pub seed: u64,
    pub got: Vec<(u32, u32)>,
    pub expected: Vec<(u32, u32)>,
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn format(offset: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: msg.into(),
        }
    }
}
