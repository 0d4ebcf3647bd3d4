use thiserror::Error;

use crate::instance::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed instance document: {0}")]
    Malformed(String),

    #[error("invalid number {0:?}: {1}")]
    Number(String, String),

    #[error("non-finite number {0:?}")]
    NonFinite(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("negative count {count} for type {label:?}")]
    NegativeCount { label: String, count: i64 },

    #[error("invalid instance: {0}")]
    Invalid(ValidationReport),

    #[error("operation requires an exchangeable (symmetric) surplus matrix")]
    NotExchangeable,

    #[error("brute-force oracle limited to {limit} individuals, instance has {population}")]
    OracleTooLarge { population: u64, limit: u64 },

    #[error("matching is infeasible for this instance: {0}")]
    InfeasibleMatching(String),

    #[error("clone factor must be a positive integer")]
    ZeroFactor,

    #[error("branch-and-bound node limit of {0} exhausted")]
    NodeLimit(u64),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input data (as opposed to I/O or solver limits).
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::NodeLimit(_))
    }
}
