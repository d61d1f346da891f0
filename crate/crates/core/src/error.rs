use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    UnknownVertex { vertex: usize, order: usize },

    #[error("edge ({0}, {1}) is not present in the graph")]
    UnknownEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected; distances are undefined")]
    DisconnectedGraph,

    #[error("complement graph is disconnected")]
    ComplementDisconnected,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("partition is not equitable")]
    NotEquitable,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("graph is not bipartite with the given parts: {0}")]
    NotBipartite(String),

    #[error("{what} exceeds the enumeration cap ({got} > {cap})")]
    TooLarge { what: &'static str, got: usize, cap: usize },

    #[error("malformed graph6 at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("malformed edge list at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("oracles disagree: {0}")]
    OracleDisagreement(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
