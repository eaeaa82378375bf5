use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("vertex {id} out of range for graph with {n} vertices")]
    InvalidVertex { id: usize, n: usize },

    #[error("seed set is empty")]
    EmptySeedSet,

    #[error("vertex {0} appears more than once in the seed set")]
    DuplicateSeed(usize),

    #[error("requested {k} seeds but the graph has only {n} vertices")]
    TooManySeeds { k: usize, n: usize },

    #[error("graph has {edges} edges; exact enumeration is limited to {limit}")]
    TooLargeForEnumeration { edges: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("ranking of length {len} is shorter than k = {k}")]
    RankingTooShort { len: usize, k: usize },

    #[error("sweep grid is empty")]
    EmptyGrid,

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
}
