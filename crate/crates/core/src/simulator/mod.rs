//! Strategies and the query-commit execution engine.

mod catalog;
mod heuristics;
mod pendant;
mod structured;

pub use catalog::{build_strategy, StrategyKind, HEURISTICS};
pub use heuristics::{
    BatchMatching, MatchingWeights, MaxProb, MinAvgDegree, MinDegree, MinProb, SuccessiveMatching,
};
pub use pendant::{pendant_first, PendantFirst};
pub use structured::{
    bipartite_sequential, blood_type_decomposition, clique_strategy, BipartiteSequential,
    Sequence,
};

use rand::Rng;

use crate::error::StrategyError;
use crate::graph::{EdgeId, EdgeSet, Matching, ResidualView, Scenario, WeightedGraph};

/// Queries made so far in one run, with their outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryHistory {
    entries: Vec<(EdgeId, bool)>,
}

impl QueryHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, e: EdgeId, success: bool) {
        self.entries.push((e, success));
    }

    pub fn entries(&self) -> &[(EdgeId, bool)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last(&self) -> Option<(EdgeId, bool)> {
        self.entries.last().copied()
    }

    pub fn successes(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.entries.iter().filter(|(_, s)| *s).map(|(e, _)| *e)
    }
}

/// A querying policy. Implementations may keep per-run state; the engine
/// gives every run its own instance.
pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    /// Next edge to query, or `None` to stop. The returned edge must be
    /// alive in `residual`.
    fn next_query(&mut self, residual: &ResidualView<'_>, history: &QueryHistory)
        -> Option<EdgeId>;

    fn clone_box(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub matching: Matching,
    pub history: QueryHistory,
    pub scenario: Option<Scenario>,
}

impl RunResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

fn drive<F>(
    g: &WeightedGraph,
    strategy: &mut dyn Strategy,
    mut exists: F,
) -> Result<(Matching, QueryHistory), StrategyError>
where
    F: FnMut(EdgeId) -> bool,
{
    let mut residual = g.view();
    let mut history = QueryHistory::new();
    let mut queried = EdgeSet::with_capacity(g.edge_count());
    let mut matching = Matching::new();
    while !residual.is_empty() {
        let Some(e) = strategy.next_query(&residual, &history) else {
            break;
        };
        if e.0 >= g.edge_count() || queried.contains(e.0) {
            return Err(StrategyError::DuplicateQuery {
                strategy: strategy.name(),
                edge: e,
            });
        }
        if !residual.is_alive(e) {
            return Err(StrategyError::DeadEdge {
                strategy: strategy.name(),
                edge: e,
            });
        }
        queried.insert(e.0);
        let success = exists(e);
        if success {
            residual.remove_neighborhood_mut(e)?;
            matching.push(e);
        } else {
            residual.remove_edge_mut(e)?;
        }
        history.push(e, success);
    }
    Ok((matching, history))
}

/// Runs `strategy` against the realization `scenario`.
pub fn run(
    g: &WeightedGraph,
    strategy: &mut dyn Strategy,
    scenario: &Scenario,
) -> Result<RunResult, StrategyError> {
    let (matching, history) = drive(g, strategy, |e| scenario.contains(e))?;
    Ok(RunResult {
        matching,
        history,
        scenario: Some(scenario.clone()),
    })
}

/// Runs `strategy`, drawing each edge's existence only when it is queried.
pub fn run_lazy<R: Rng + ?Sized>(
    g: &WeightedGraph,
    strategy: &mut dyn Strategy,
    rng: &mut R,
) -> Result<RunResult, StrategyError> {
    let (matching, history) = drive(g, strategy, |e| rng.random::<f64>() < g.prob(e))?;
    Ok(RunResult {
        matching,
        history,
        scenario: None,
    })
}

/// Matching size of a run, without keeping the trace.
pub fn run_size(
    g: &WeightedGraph,
    strategy: &mut dyn Strategy,
    scenario: &Scenario,
) -> Result<usize, StrategyError> {
    drive(g, strategy, |e| scenario.contains(e)).map(|(m, _)| m.len())
}

/// Exact expected matching size of `strategy` on `g`, by recursing over
/// both outcomes of every query. Exponential; meant for small graphs.
pub fn strategy_value(g: &WeightedGraph, strategy: &dyn Strategy) -> Result<f64, StrategyError> {
    fn rec(
        residual: &ResidualView<'_>,
        strategy: &mut dyn Strategy,
        history: &mut QueryHistory,
    ) -> Result<f64, StrategyError> {
        if residual.is_empty() {
            return Ok(0.0);
        }
        let Some(e) = strategy.next_query(residual, history) else {
            return Ok(0.0);
        };
        if !residual.is_alive(e) {
            return Err(StrategyError::DeadEdge {
                strategy: strategy.name(),
                edge: e,
            });
        }
        let p = residual.graph().prob(e);
        let mut value = 0.0;
        if p > 0.0 {
            let mut s = strategy.clone_box();
            let next = residual.remove_neighborhood(e)?;
            history.push(e, true);
            value += p * (1.0 + rec(&next, s.as_mut(), history)?);
            history.entries.pop();
        }
        if p < 1.0 {
            let next = residual.remove_edge(e)?;
            history.push(e, false);
            value += (1.0 - p) * rec(&next, strategy, history)?;
            history.entries.pop();
        }
        Ok(value)
    }
    let mut s = strategy.clone_box();
    rec(&g.view(), s.as_mut(), &mut QueryHistory::new())
}

/// Fixed query order; skips edges that are no longer alive.
#[derive(Clone, Debug)]
pub struct FixedOrder {
    order: Vec<EdgeId>,
    pos: usize,
    name: String,
}

impl FixedOrder {
    pub fn new(name: impl Into<String>, order: Vec<EdgeId>) -> Self {
        Self {
            order,
            pos: 0,
            name: name.into(),
        }
    }
}

impl Strategy for FixedOrder {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_query(&mut self, residual: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        while let Some(&e) = self.order.get(self.pos) {
            self.pos += 1;
            if residual.is_alive(e) {
                return Some(e);
            }
        }
        None
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
