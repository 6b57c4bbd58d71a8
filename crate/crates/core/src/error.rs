use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} out of range for graph with {count} nodes")]
    NodeOutOfRange { node: usize, count: usize },

    #[error("line {line}: cannot parse {token:?} as a node id")]
    Parse { line: usize, token: String },

    #[error("line {line}: expected two node ids")]
    MissingEndpoint { line: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("partition has {got} entries but graph has {expected} nodes")]
    PartitionSize { expected: usize, got: usize },

    #[error("eigenvector iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("unknown metric {0:?}")]
    UnknownMetric(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("infeasible size: desired {desired} nodes but lattice degree may reach {k_max}")]
    InfeasibleSize { desired: usize, k_max: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
