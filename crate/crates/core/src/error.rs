use std::path::PathBuf;

use crate::lp::LpStatus;

/// Errors raised anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vector is not in the probability simplex: {0}")]
    NotInSimplex(String),

    #[error("arm index {index} out of range for {arms} arms")]
    ArmOutOfRange { index: usize, arms: usize },

    #[error("linear program ended with status {0:?}")]
    Solver(LpStatus),

    #[error("simplex iteration limit ({0}) reached")]
    IterationLimit(usize),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
