use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot multiply {left} by {right}")]
    KindMismatch { left: String, right: String },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("generator {index} duplicates an earlier generator")]
    DuplicateGenerator { index: usize },

    #[error("generator {index} is malformed: {reason}")]
    MalformedGenerator { index: usize, reason: String },

    #[error("malformed generator document: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("{what} {index} is out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("empty word has no first or last letter")]
    EmptyWord,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a snapshot file (bad magic bytes)")]
    BadMagic,

    #[error("unsupported snapshot format version {0}")]
    UnsupportedVersion(u32),

    #[error("snapshot file is truncated")]
    Truncated,

    #[error("snapshot checksum mismatch: stored {stored:#018x}, computed {computed:#018x}")]
    ChecksumMismatch { stored: u64, computed: u64 },

    #[error("corrupt snapshot: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
