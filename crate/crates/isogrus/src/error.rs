use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid tile-partition: {0}")]
    InvalidPartition(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cup {0} is not an anticlockwise cup of the weight")]
    NotFlippable(String),
    #[error("no cup ({0},{1}) in the cup diagram")]
    NoSuchCup(usize, usize),
    #[error("weight {0} is not contractible at {1}")]
    NotContractible(String, usize),
    #[error("generator removes the contraction witness at {0}")]
    WitnessRemoved(usize),
    #[error("element leaves the truncation at {0}")]
    NotTruncated(usize),
    #[error("generators do not compose: {0}")]
    NotComposable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
