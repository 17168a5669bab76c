//! Greedy and matching-based heuristics. None of them handle pendant edges
//! themselves; the catalog wraps each one in [`super::PendantFirst`].

use std::collections::VecDeque;
use std::sync::Arc;

use crate::graph::{EdgeId, Matching, ResidualView, WeightedGraph};
use crate::matching::{max_cardinality_matching, WeightedMatcher};

use super::{QueryHistory, Strategy};

fn sorted_by_prob(g: &WeightedGraph, descending: bool) -> Arc<[EdgeId]> {
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    // stable sort keeps ascending index among equal probabilities
    if descending {
        order.sort_by(|a, b| g.prob(*b).total_cmp(&g.prob(*a)));
    } else {
        order.sort_by(|a, b| g.prob(*a).total_cmp(&g.prob(*b)));
    }
    order.into()
}

fn next_alive(order: &[EdgeId], pos: &mut usize, r: &ResidualView<'_>) -> Option<EdgeId> {
    while let Some(&e) = order.get(*pos) {
        if r.is_alive(e) {
            return Some(e);
        }
        *pos += 1;
    }
    None
}

/// Highest probability first.
#[derive(Clone)]
pub struct MaxProb {
    order: Arc<[EdgeId]>,
    pos: usize,
}

impl MaxProb {
    pub fn new(g: &WeightedGraph) -> Self {
        Self {
            order: sorted_by_prob(g, true),
            pos: 0,
        }
    }
}

impl Strategy for MaxProb {
    fn name(&self) -> String {
        "maxP".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        next_alive(&self.order, &mut self.pos, r)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Lowest probability first.
#[derive(Clone)]
pub struct MinProb {
    order: Arc<[EdgeId]>,
    pos: usize,
}

impl MinProb {
    pub fn new(g: &WeightedGraph) -> Self {
        Self {
            order: sorted_by_prob(g, false),
            pos: 0,
        }
    }
}

impl Strategy for MinProb {
    fn name(&self) -> String {
        "minP".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        next_alive(&self.order, &mut self.pos, r)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Edge whose endpoints have the smallest total degree.
#[derive(Clone, Default)]
pub struct MinDegree;

impl Strategy for MinDegree {
    fn name(&self) -> String {
        "minDeg".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        r.edges().min_by_key(|&e| r.edge_degree(e))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Edge `(u, v)` minimizing the summed probabilities of the alive edges
/// at `u` plus those at `v`.
///
/// Loads are kept in fixed point (units of 2^-32) and updated from the
/// query history, so they are exact and ties do not depend on update order.
#[derive(Clone, Default)]
pub struct MinAvgDegree {
    load: Vec<u64>,
    counted: Vec<bool>,
    alive: usize,
    seen: usize,
}

fn fixed(p: f64) -> u64 {
    (p * 4_294_967_296.0).round() as u64
}

impl MinAvgDegree {
    fn rebuild(&mut self, r: &ResidualView<'_>) {
        let g = r.graph();
        self.load.clear();
        self.load.resize(g.node_count(), 0);
        self.counted.clear();
        self.counted.resize(g.edge_count(), false);
        for e in r.edges() {
            let edge = g.edge(e);
            self.load[edge.u.0] += fixed(edge.p);
            self.load[edge.v.0] += fixed(edge.p);
            self.counted[e.0] = true;
        }
        self.alive = r.edge_count();
    }

    fn uncount(&mut self, g: &WeightedGraph, e: EdgeId) {
        if std::mem::take(&mut self.counted[e.0]) {
            let edge = g.edge(e);
            self.load[edge.u.0] -= fixed(edge.p);
            self.load[edge.v.0] -= fixed(edge.p);
            self.alive -= 1;
        }
    }

    fn catch_up(&mut self, r: &ResidualView<'_>, history: &QueryHistory) {
        let g = r.graph();
        if self.counted.len() != g.edge_count() || self.seen > history.len() {
            self.rebuild(r);
            self.seen = history.len();
            return;
        }
        for &(e, success) in &history.entries()[self.seen..] {
            if success {
                let edge = g.edge(e);
                for node in [edge.u, edge.v] {
                    for &(_, f) in g.incident(node) {
                        self.uncount(g, f);
                    }
                }
            } else {
                self.uncount(g, e);
            }
        }
        self.seen = history.len();
        if self.alive != r.edge_count() {
            self.rebuild(r);
        }
    }
}

impl Strategy for MinAvgDegree {
    fn name(&self) -> String {
        "minAvgDeg".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, history: &QueryHistory) -> Option<EdgeId> {
        self.catch_up(r, history);
        let g = r.graph();
        let mut best: Option<(u64, EdgeId)> = None;
        for e in r.edges() {
            let edge = g.edge(e);
            let key = self.load[edge.u.0] + self.load[edge.v.0];
            if best.is_none_or(|(b, _)| key < b) {
                best = Some((key, e));
            }
        }
        best.map(|(_, e)| e)
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Edge weights for the weighted-matching heuristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchingWeights {
    /// `1 - p`: prefer risky edges.
    OneMinusP,
    /// `p`: prefer likely edges.
    P,
}

impl MatchingWeights {
    pub fn vector(self, g: &WeightedGraph) -> Arc<[f64]> {
        g.edges()
            .map(|(_, e)| match self {
                MatchingWeights::OneMinusP => 1.0 - e.p,
                MatchingWeights::P => e.p,
            })
            .collect()
    }
}

/// Maximum-weight matching kept in step with the residual graph through
/// the query history.
#[derive(Clone, Debug)]
struct TrackedMatcher {
    matcher: WeightedMatcher,
    seen: usize,
}

impl TrackedMatcher {
    fn new(g: &WeightedGraph, weights: MatchingWeights) -> Self {
        let w = weights.vector(g);
        Self {
            matcher: WeightedMatcher::new(&g.view(), &w).expect("weights derived from probabilities"),
            seen: 0,
        }
    }

    fn matching(&mut self, r: &ResidualView<'_>, history: &QueryHistory) -> Matching {
        let g = r.graph();
        for &(e, success) in &history.entries()[self.seen.min(history.len())..] {
            if success {
                let edge = g.edge(e);
                self.matcher.remove_node(edge.u);
                self.matcher.remove_node(edge.v);
            } else {
                self.matcher.remove_edge(e);
            }
        }
        self.seen = history.len();
        if self.matcher.edge_count() != r.edge_count() {
            self.matcher.sync(r);
        }
        self.matcher.matching()
    }
}

/// Computes a matching of the residual graph and queries all of its edges
/// in ascending index order, skipping those that died in the meantime,
/// then repeats.
#[derive(Clone)]
pub struct BatchMatching {
    weighted: Option<TrackedMatcher>,
    queue: VecDeque<EdgeId>,
}

impl BatchMatching {
    /// Maximum-cardinality batches.
    pub fn cardinality() -> Self {
        Self {
            weighted: None,
            queue: VecDeque::new(),
        }
    }

    /// Maximum-weight batches.
    pub fn weighted(g: &WeightedGraph, weights: MatchingWeights) -> Self {
        Self {
            weighted: Some(TrackedMatcher::new(g, weights)),
            queue: VecDeque::new(),
        }
    }
}

impl Strategy for BatchMatching {
    fn name(&self) -> String {
        if self.weighted.is_some() { "batchWSM" } else { "batchSM" }.into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, history: &QueryHistory) -> Option<EdgeId> {
        while let Some(e) = self.queue.pop_front() {
            if r.is_alive(e) {
                return Some(e);
            }
        }
        let m = match &mut self.weighted {
            None => max_cardinality_matching(r),
            Some(t) => t.matching(r, history),
        };
        self.queue.extend(m.edges().iter().copied());
        self.queue.pop_front()
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Keeps a maximum-weight matching of the residual graph and queries its
/// lowest-index edge.
#[derive(Clone)]
pub struct SuccessiveMatching {
    kind: MatchingWeights,
    tracked: TrackedMatcher,
}

impl SuccessiveMatching {
    pub fn new(g: &WeightedGraph, kind: MatchingWeights) -> Self {
        Self {
            kind,
            tracked: TrackedMatcher::new(g, kind),
        }
    }
}

impl Strategy for SuccessiveMatching {
    fn name(&self) -> String {
        match self.kind {
            MatchingWeights::OneMinusP => "SWMq",
            MatchingWeights::P => "SWMp",
        }
        .into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, history: &QueryHistory) -> Option<EdgeId> {
        self.tracked.matching(r, history).edges().first().copied()
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Scenario;
    use crate::simulator::run;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, 0.9), (1, 2, 0.5), (0, 2, 0.1)]).unwrap()
    }

    fn first_query(s: &mut dyn Strategy, g: &WeightedGraph) -> EdgeId {
        run(g, s, &Scenario::empty(g)).unwrap().history.entries()[0].0
    }

    #[test]
    fn first_choices_on_triangle() {
        let g = triangle();
        assert_eq!(first_query(&mut MaxProb::new(&g), &g), EdgeId(0));
        assert_eq!(first_query(&mut MinProb::new(&g), &g), EdgeId(2));
        assert_eq!(first_query(&mut MinDegree, &g), EdgeId(0));
        // loads: node0 1.0, node1 1.4, node2 0.6
        assert_eq!(first_query(&mut MinAvgDegree::default(), &g), EdgeId(2));
        assert_eq!(first_query(&mut BatchMatching::cardinality(), &g), EdgeId(0));
        let mut q = SuccessiveMatching::new(&g, MatchingWeights::OneMinusP);
        assert_eq!(first_query(&mut q, &g), EdgeId(2));
        let mut p = SuccessiveMatching::new(&g, MatchingWeights::P);
        assert_eq!(first_query(&mut p, &g), EdgeId(0));
    }

    #[test]
    fn batch_skips_dead_entries() {
        // 4-cycle plus chord: the batch {e0, e2} then a success on e0 does
        // not kill e2, but a success of e1 would
        let g = WeightedGraph::new(4, [(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5), (3, 0, 0.5)]).unwrap();
        let mut b = BatchMatching::cardinality();
        let r = run(&g, &mut b, &Scenario::full(&g)).unwrap();
        assert_eq!(r.matching.edges(), &[EdgeId(0), EdgeId(2)]);
        let mut b = BatchMatching::cardinality();
        let r = run(&g, &mut b, &Scenario::empty(&g)).unwrap();
        assert_eq!(r.history.len(), 4);
    }

    #[test]
    fn successive_matching_recomputes_after_failure() {
        let g = WeightedGraph::new(4, [(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5), (3, 0, 0.5)]).unwrap();
        let mut s = SuccessiveMatching::new(&g, MatchingWeights::P);
        let r = run(&g, &mut s, &Scenario::from_edges(&g, [EdgeId(1), EdgeId(3)])).unwrap();
        assert_eq!(r.matching.edges(), &[EdgeId(1), EdgeId(3)]);
    }
}
