use std::fmt;

/// Everything that can go wrong inside the watermarking toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty key")]
    EmptyKey,
    #[error("degenerate chaos state")]
    DegenerateChaos,
    #[error("cover too small")]
    CoverTooSmall,
    #[error("cover not initialized: pixel ({row}, {col}) has an even value")]
    CoverNotInitialized { row: usize, col: usize },
    #[error("embedding capacity exceeded")]
    CapacityExceeded,
    #[error("record/payload mismatch")]
    RecordPayloadMismatch,
    #[error("record does not match image dimensions")]
    RecordDimensionMismatch,
    #[error("invalid record: {0}")]
    InvalidRecord(&'static str),
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("invalid attack parameters: {0}")]
    InvalidAttack(String),

    #[error("not a key file")]
    NotAKeyFile,
    #[error("unsupported version {0}")]
    UnsupportedVersion(u16),
    #[error("corrupt key file: {0}")]
    CorruptKeyFile(KeyFileDefect),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("unsupported maxval {0}")]
    UnsupportedMaxval(u32),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("png decode error: {0}")]
    Png(#[from] image::ImageError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why a key file was refused after its magic and version checked out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyFileDefect {
    Truncated,
    TrailingData,
    ZeroDimension,
    OutOfBounds,
    DuplicateCoordinate,
}

impl fmt::Display for KeyFileDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyFileDefect::Truncated => "truncated",
            KeyFileDefect::TrailingData => "trailing data",
            KeyFileDefect::ZeroDimension => "zero dimension",
            KeyFileDefect::OutOfBounds => "coordinate out of bounds",
            KeyFileDefect::DuplicateCoordinate => "duplicate coordinate",
        })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
