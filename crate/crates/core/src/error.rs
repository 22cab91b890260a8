use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least 2 arms, got {0}")]
    TooFewArms(usize),

    #[error("arm index {index} out of range for {num_arms} arms")]
    ArmOutOfRange { index: usize, num_arms: usize },

    #[error("loss {0} is outside [0, 1]")]
    LossOutOfRange(f64),

    #[error("empty probability vector")]
    EmptyDistribution,

    #[error("probability at index {index} is invalid: {value}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum} (deviation {deviation:e} exceeds tolerance)")]
    BadProbabilitySum { sum: f64, deviation: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("arm {0} has not been played yet; gap estimates need one observation per arm")]
    Uninitialized(usize),

    #[error("expected round {expected}, got {got}")]
    RoundMismatch { expected: u64, got: u64 },

    #[error("round {round} is beyond the loss matrix horizon {horizon}")]
    BeyondHorizon { round: u64, horizon: u64 },

    #[error("arm {arm} was played with probability 0 in round {round}")]
    ZeroProbability { arm: usize, round: u64 },

    #[error("ground truth is only defined for stochastic environments")]
    NotStochastic,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix file line {line}: {reason}")]
    MatrixParse { line: usize, reason: String },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("unknown validation suite `{0}`")]
    UnknownSuite(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
