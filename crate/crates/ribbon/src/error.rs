use thiserror::Error;

/// Errors raised by parsing, validation and the graph operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("edge label {label:?} occurs {count} time(s), expected exactly 2")]
    Arity { label: String, count: usize },

    #[error("duplicate circle id {0:?}")]
    DuplicateCircleId(String),

    #[error("unknown edge label {0:?}")]
    UnknownEdge(String),

    #[error("presentation is not a bouquet: {0} circles")]
    NotABouquet(usize),

    #[error("presentation is disconnected ({0} components)")]
    Disconnected(usize),

    #[error("presentation is not Eulerian (some vertex has odd degree)")]
    NotEulerian,

    #[error("edge set {0:?} is not a spanning tree")]
    NotASpanningTree(String),

    #[error("edge {0:?} is not a tree (marker) edge of the bouquet")]
    NotATreeEdge(String),

    #[error("edge {0:?} is a tree (marker) edge, expected a live edge")]
    NotALiveEdge(String),

    #[error("subsets do not partition the edge set: {0}")]
    NotAPartition(String),

    #[error("index {index} out of range (set has {len} sequences)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid shorter-sequence set: {0}")]
    InvalidSmsSet(String),

    #[error("edge count {edges} exceeds the oracle cap {cap}")]
    CapExceeded { edges: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, RibbonError>;
