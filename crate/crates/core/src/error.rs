use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("variable index {index} out of range for {n} columns")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("incompatible marginals: {0}")]
    Incompatible(String),
    #[error("not a unit vector: norm {0}")]
    NotUnitVector(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coincidence selection is empty: {0}")]
    EmptySelection(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
