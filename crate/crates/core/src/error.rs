use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distribution factor {0} outside [0, 1]")]
    FactorOutOfRange(f64),

    #[error("coauthor count must be at least 1")]
    ZeroAuthors,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid record {paper_id:?}: {message}")]
    InvalidRecord { paper_id: String, message: String },

    #[error("no distribution factor configured for {0}-author papers")]
    MissingFactor(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("model share at position {0} is zero")]
    ZeroModelShare(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("partition does not match network: {0}")]
    PartitionMismatch(String),

    #[error("malformed network file: {0}")]
    Network(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
