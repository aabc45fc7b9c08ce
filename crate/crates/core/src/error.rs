use thiserror::Error;

/// Errors produced anywhere in the benchmark pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph field `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("self-loop on node {0}")]
    SelfLoop(u64),

    #[error("node {0} is not in the graph")]
    UnknownNode(u64),

    #[error("invalid node order: {0}")]
    NodeOrder(String),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size limit exceeded: {what} = {value}, maximum {max}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("objective returned a non-finite value {value} at {params:?}")]
    NonFinite { value: f64, params: Vec<f64> },

    #[error("empty support: no basis state has probability above {0}")]
    EmptySupport(f64),

    #[error("approximation ratio undefined: graph has no edges (optimal cover is empty)")]
    UndefinedRatio,

    #[error("no valid instances: {0}")]
    NoInstances(String),

    #[error("unknown plot kind `{0}`")]
    UnknownPlotKind(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
