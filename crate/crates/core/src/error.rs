use thiserror::Error;

use crate::network::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    Validation(ValidationReport),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("capacity exceeded: {what} needs {needed} but the cap is {cap}")]
    Capacity {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("network mismatch: expected `{expected}`, found `{found}`")]
    NetworkMismatch { expected: String, found: String },

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("subset is not invariant: {0}")]
    NotInvariant(String),

    #[error("map is not a projection: {0}")]
    NotProjection(String),

    #[error("chain has {} recurrent classes: {}", .0.len(), format_classes(.0))]
    MultipleRecurrentClasses(Vec<Vec<String>>),

    #[error("power iteration did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("polynomial is not monic")]
    NonMonic,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn format_classes(classes: &[Vec<String>]) -> String {
    classes
        .iter()
        .map(|c| format!("{{{}}}", c.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
