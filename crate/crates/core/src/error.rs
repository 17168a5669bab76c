use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge} has probability {p}, expected a value in (0, 1]")]
    InvalidProbability { edge: usize, p: f64 },
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("node {node} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("{labels} labels for {node_count} nodes")]
    LabelCount { labels: usize, node_count: usize },
    #[error("edge {0} is not alive in the residual graph")]
    EdgeNotAlive(EdgeId),
    #[error("edge {0} shares an endpoint with another matched edge")]
    NotAMatching(EdgeId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatchingError {
    #[error("edge {edge} has invalid weight {weight}")]
    InvalidWeight { edge: EdgeId, weight: f64 },
    #[error("weight vector has {got} entries, graph has {expected} edges")]
    WeightCount { got: usize, expected: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("unknown strategy `{name}`; valid names: {valid}")]
    UnknownStrategy { name: String, valid: String },
    #[error("strategy `{strategy}` queried edge {edge}, which is not permissible")]
    DeadEdge { strategy: String, edge: EdgeId },
    #[error("strategy `{strategy}` queried edge {edge} twice")]
    DuplicateQuery { strategy: String, edge: EdgeId },
    #[error("graph is not complete bipartite: {0}")]
    NotCompleteBipartite(String),
    #[error("graph is not complete: missing edge {0}-{1}")]
    NotComplete(usize, usize),
    #[error("graph has no blood-type labels")]
    MissingLabels,
    #[error("blood-type group {group} violates the model: {reason}")]
    ModelViolation { group: String, reason: String },
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("graph has {edges} edges, above the cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("memo table exceeded {limit} entries")]
    MemoOverflow { limit: usize },
    #[error("invalid decision tree: {0}")]
    InvalidTree(String),
    #[error("invalid contracted decision tree: {0}")]
    InvalidCdt(String),
    #[error("graph has a pendant edge {0}")]
    HasPendant(EdgeId),
    #[error("graph is not connected")]
    NotConnected,
    #[error("sparsity excess {excess} exceeds d = {d}")]
    TooDense { excess: i64, d: i64 },
    #[error("edge {edge} is not an alive edge of the path starting at node {path}")]
    NotOnPath { edge: EdgeId, path: usize },
    #[error("family has more than {limit} members")]
    FamilyTooLarge { limit: u128 },
    #[error("decomposition invariant violated: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("half-width must be positive, got {0}")]
    InvalidHalfWidth(f64),
    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),
    #[error("n = {0} is not a positive multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("graph has {edges} edges, above the cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}
