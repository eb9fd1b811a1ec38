use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge identifier `{0}`")]
    DuplicateEdge(String),
    #[error("graph has {0} edges; at most 64 are supported")]
    TooManyEdges(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("improper network: edge `{0}` has zero resistance")]
    ImproperNetwork(String),
    #[error("negative resistance on edge `{0}`")]
    NegativeResistance(String),
    #[error("divisor is not zero-sum (total {0})")]
    NotZeroSum(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("forest component count must be at least 1")]
    InvalidForestCount,
    #[error("edge set is not a 2-forest")]
    NotTwoForest,
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("edge `{0}` does not join the given endpoints")]
    WrongOrientation(String),
    #[error("test vector is identically zero")]
    ZeroTestVector,
    #[error("negative entry in test vector")]
    NegativeTestVector,
    #[error("component index {index} out of range for {count} components")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("edge `{0}` has the zero label (never the unit ideal)")]
    ZeroLabel(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("divisor {0} not zero-sum")]
    DivisorNotZeroSum(String),
    #[error("unknown divisor `{0}`")]
    UnknownDivisor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}
