use alloc::string::String;

/// Errors raised by the core engine.
///
/// Variants fall into three groups the frontends care about: malformed input
/// (`Parse`, `DimensionMismatch`, `InvalidType`, ...), domain violations
/// (`NonIntegral`, `NotDominant`, `Singular`, caps), and `Consistency`, which
/// means two independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid root system {label}: {reason}")]
    InvalidType { label: String, reason: &'static str },
    #[error("dimension mismatch: expected rank {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight must be integral")]
    NonIntegral,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight + rho is singular")]
    Singular,
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("root must be nonzero")]
    ZeroRoot,
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("truncation radius too small: need radius_sq >= {needed}")]
    RadiusTooSmall { needed: String },
    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(&'static str),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures that signal a bug or a violated theorem rather than
    /// bad input.
    pub fn is_consistency(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
