use thiserror::Error;

/// Errors produced by the graph loader and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DenseError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no edges after cleaning")]
    EmptyGraph,

    #[error("density of an empty vertex set is undefined")]
    EmptySubset,

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("brute-force oracle refuses n = {n} (limit {limit})")]
    OracleScale { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The solver is not applicable to this input (e.g. exact solving on a
    /// signed graph, which is NP-hard).
    #[error("solver refused: {0}")]
    Refused(String),

    #[error("capacity overflow while building flow network")]
    CapacityOverflow,
}

pub type Result<T> = std::result::Result<T, DenseError>;
