//! Query-commit stochastic matching.
//!
//! Edges of a graph exist independently with known probabilities. A
//! strategy probes edges one at a time; an edge that turns out to exist is
//! added to the matching on the spot and its endpoints leave the graph.
//! This crate models such instances, runs strategies against sampled or
//! exhaustively enumerated realizations, computes optimal strategies for
//! small or sparse graphs, generates kidney-exchange instances and estimates
//! strategy values with explicit confidence intervals.

pub mod blood;
pub mod error;
pub mod estimator;
pub mod exact;
pub mod experiment;
pub mod format;
pub mod graph;
pub mod kidney;
pub mod matching;
pub mod seed;
pub mod simulator;

pub use blood::{AboPair, AboType};
pub use error::{ConfigError, EstimatorError, ExactError, GraphError, MatchingError, StrategyError};
pub use graph::{
    sample_scenario, Edge, EdgeId, EdgeSet, Matching, NodeId, ResidualView, Scenario,
    WeightedGraph,
};
