/// Errors from the matrix model.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] bwb_core::Error),
    #[error("matrix model supports rank at most {max}, got {rank}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_consistency(&self) -> bool {
        match self {
            Error::Consistency(_) => true,
            Error::Core(e) => e.is_consistency(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
