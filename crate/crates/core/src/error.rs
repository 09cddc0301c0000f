use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("state count {states} exceeds the configured cap of {cap}")]
    ResourceCap { states: u64, cap: u64 },

    #[error("chain is reducible at the given rates ({reason}); restrict to the closed class of nonzero-weight states (totally asymmetric mode)")]
    Reducible { reason: String },

    #[error("identity failed: {0}")]
    IdentityFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("exact solver gave up after {primes} primes")]
    SolverExhausted { primes: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
