//! Weighted graphs `G = (V, E, p)`, scenarios and residual views.
//!
//! Edges carry an existence probability in `(0, 1]` and a dense, stable
//! index. Every other structure in the crate (scenarios, residual graphs,
//! matchings, memo keys) refers to edges by that index.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::blood::AboPair;
use crate::error::GraphError;

/// Set of edge indices, used for scenarios, residual graphs and memo keys.
pub type EdgeSet = FixedBitSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected edge with endpoints stored as `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub p: f64,
}

impl Edge {
    #[inline]
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn touches(&self, node: NodeId) -> bool {
        self.u == node || self.v == node
    }
}

/// Immutable weighted graph. Nodes without incident edges may be declared
/// (the text format and the generator need stable node ids) but they are
/// ignored by every structural query: `v(G)` counts only nodes with an edge.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    labels: Option<Vec<AboPair>>,
}

impl WeightedGraph {
    /// Builds a graph on nodes `0..node_count`. Edge indices follow the
    /// order of `edges`.
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut adjacency = vec![Vec::new(); node_count];
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (index, (a, b, p)) in edges.into_iter().enumerate() {
            if a >= node_count || b >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    node: a.max(b),
                    node_count,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { node: a });
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(GraphError::InvalidProbability { edge: index, p });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            let id = EdgeId(index);
            adjacency[u].push((NodeId(v), id));
            adjacency[v].push((NodeId(u), id));
            out.push(Edge {
                u: NodeId(u),
                v: NodeId(v),
                p,
            });
        }
        Ok(Self {
            node_count,
            edges: out,
            adjacency,
            labels: None,
        })
    }

    /// Attaches patient/donor blood-type labels, one per declared node.
    pub fn with_labels(mut self, labels: Vec<AboPair>) -> Result<Self, GraphError> {
        if labels.len() != self.node_count {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                node_count: self.node_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Declared node count, including nodes without edges.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// `v(G)`: nodes with at least one incident edge.
    pub fn active_node_count(&self) -> usize {
        self.adjacency.iter().filter(|a| !a.is_empty()).count()
    }

    /// `e(G)`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    #[inline]
    pub fn prob(&self, e: EdgeId) -> f64 {
        self.edges[e.0].p
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn incident(&self, node: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[node.0]
    }

    pub fn find_edge(&self, a: NodeId, b: NodeId) -> Option<EdgeId> {
        self.adjacency
            .get(a.0)?
            .iter()
            .find(|(n, _)| *n == b)
            .map(|(_, e)| *e)
    }

    pub fn labels(&self) -> Option<&[AboPair]> {
        self.labels.as_deref()
    }

    pub fn label(&self, node: NodeId) -> Option<AboPair> {
        self.labels.as_ref().map(|l| l[node.0])
    }

    /// `e(G) - v(G)`; a connected graph is d-sparse iff this is at most `d`.
    pub fn sparsity_excess(&self) -> i64 {
        self.edge_count() as i64 - self.active_node_count() as i64
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        let mut set = EdgeSet::with_capacity(self.edges.len());
        set.insert_range(..);
        set
    }

    pub fn view(&self) -> ResidualView<'_> {
        ResidualView::new(self)
    }
}

/// One realization `σ`: the set of edges that exist.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    present: EdgeSet,
}

impl Scenario {
    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(g: &WeightedGraph, edges: I) -> Self {
        let mut present = EdgeSet::with_capacity(g.edge_count());
        for e in edges {
            present.insert(e.0);
        }
        Self { present }
    }

    pub fn empty(g: &WeightedGraph) -> Self {
        Self {
            present: EdgeSet::with_capacity(g.edge_count()),
        }
    }

    pub fn full(g: &WeightedGraph) -> Self {
        Self {
            present: g.full_edge_set(),
        }
    }

    /// Scenario from the low `e(G)` bits of `mask`; bit `i` is edge `i`.
    pub fn from_mask(g: &WeightedGraph, mask: u64) -> Self {
        let m = g.edge_count();
        assert!(m <= 64, "mask scenarios need at most 64 edges");
        let mut present = EdgeSet::with_capacity(m);
        for i in 0..m {
            if mask >> i & 1 == 1 {
                present.insert(i);
            }
        }
        Self { present }
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.present.contains(e.0)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.present.ones().map(EdgeId)
    }

    pub fn len(&self) -> usize {
        self.present.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_clear()
    }

    pub fn as_set(&self) -> &EdgeSet {
        &self.present
    }

    /// Probability of this exact realization under `g`.
    pub fn probability(&self, g: &WeightedGraph) -> f64 {
        g.edges()
            .map(|(id, e)| if self.contains(id) { e.p } else { 1.0 - e.p })
            .product()
    }

    /// Every realization of `g` with its probability, in mask order.
    /// Only sensible for small graphs.
    pub fn enumerate(g: &WeightedGraph) -> impl Iterator<Item = (Scenario, f64)> + '_ {
        let m = g.edge_count();
        assert!(m <= 30, "exhaustive enumeration over {m} edges");
        (0u64..1 << m).map(move |mask| {
            let s = Scenario::from_mask(g, mask);
            let pr = s.probability(g);
            (s, pr)
        })
    }
}

/// Samples `σ ~ G`: every edge is included independently with probability `p_e`.
pub fn sample_scenario<R: Rng + ?Sized>(g: &WeightedGraph, rng: &mut R) -> Scenario {
    let mut present = EdgeSet::with_capacity(g.edge_count());
    for (id, e) in g.edges() {
        // always draw, so the stream position does not depend on p
        let draw: f64 = rng.random();
        if draw < e.p {
            present.insert(id.0);
        }
    }
    Scenario { present }
}

/// A set of pairwise disjoint edges, kept sorted by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a matching and checks that no two edges share an endpoint.
    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(
        g: &WeightedGraph,
        edges: I,
    ) -> Result<Self, GraphError> {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut used = FixedBitSet::with_capacity(g.node_count());
        for &e in &edges {
            let edge = g.edge(e);
            if used.contains(edge.u.0) || used.contains(edge.v.0) {
                return Err(GraphError::NotAMatching(e));
            }
            used.insert(edge.u.0);
            used.insert(edge.v.0);
        }
        Ok(Self { edges })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<EdgeId>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { edges }
    }

    pub(crate) fn push(&mut self, e: EdgeId) {
        let pos = self.edges.binary_search(&e).unwrap_or_else(|p| p);
        self.edges.insert(pos, e);
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn weight(&self, weights: &[f64]) -> f64 {
        self.edges.iter().map(|e| weights[e.0]).sum()
    }

    /// Whether `node` is an endpoint of some matched edge.
    pub fn covers(&self, g: &WeightedGraph, node: NodeId) -> bool {
        self.edges.iter().any(|&e| g.edge(e).touches(node))
    }
}

/// Residual graph: the permissible edges of a base graph after some
/// queries. A node is alive iff it still has an alive incident edge.
///
/// The view keeps degrees and, per node, the XOR of its alive incident
/// edge indices, so a degree-1 node yields its pendant edge in O(1).
#[derive(Clone, Debug)]
pub struct ResidualView<'g> {
    graph: &'g WeightedGraph,
    alive: EdgeSet,
    degree: Vec<u32>,
    edge_xor: Vec<usize>,
    leaves: FixedBitSet,
    alive_edges: usize,
    alive_nodes: usize,
}

impl<'g> ResidualView<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        Self::from_set(graph, &graph.full_edge_set())
    }

    /// View containing exactly the edges of `set`.
    pub fn from_set(graph: &'g WeightedGraph, set: &EdgeSet) -> Self {
        let n = graph.node_count();
        let mut alive = EdgeSet::with_capacity(graph.edge_count());
        let mut degree = vec![0u32; n];
        let mut edge_xor = vec![0usize; n];
        let mut count = 0;
        for i in set.ones() {
            if i >= graph.edge_count() {
                break;
            }
            alive.insert(i);
            count += 1;
            let e = graph.edge(EdgeId(i));
            degree[e.u.0] += 1;
            degree[e.v.0] += 1;
            edge_xor[e.u.0] ^= i;
            edge_xor[e.v.0] ^= i;
        }
        let mut leaves = FixedBitSet::with_capacity(n);
        let mut alive_nodes = 0;
        for (node, &d) in degree.iter().enumerate() {
            if d > 0 {
                alive_nodes += 1;
            }
            if d == 1 {
                leaves.insert(node);
            }
        }
        Self {
            graph,
            alive,
            degree,
            edge_xor,
            leaves,
            alive_edges: count,
            alive_nodes,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = EdgeId>>(graph: &'g WeightedGraph, edges: I) -> Self {
        let mut set = EdgeSet::with_capacity(graph.edge_count());
        for e in edges {
            set.insert(e.0);
        }
        Self::from_set(graph, &set)
    }

    #[inline]
    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    #[inline]
    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive.contains(e.0)
    }

    #[inline]
    pub fn alive_set(&self) -> &EdgeSet {
        &self.alive
    }

    /// Alive edges in ascending index order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.alive.ones().map(EdgeId)
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.alive_edges
    }

    /// Number of alive (non-isolated) nodes.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.alive_nodes
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.alive_edges == 0
    }

    #[inline]
    pub fn degree(&self, node: NodeId) -> u32 {
        self.degree[node.0]
    }

    #[inline]
    pub fn is_node_alive(&self, node: NodeId) -> bool {
        self.degree[node.0] > 0
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.degree
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(i, _)| NodeId(i))
    }

    /// Alive edges incident to `node`.
    pub fn incident(&self, node: NodeId) -> impl Iterator<Item = (NodeId, EdgeId)> + '_ {
        self.graph
            .incident(node)
            .iter()
            .copied()
            .filter(|(_, e)| self.alive.contains(e.0))
    }

    /// Sum of the degrees of both endpoints.
    pub fn edge_degree(&self, e: EdgeId) -> u32 {
        let edge = self.graph.edge(e);
        self.degree[edge.u.0] + self.degree[edge.v.0]
    }

    /// Sum of the probabilities of the alive edges at `node`.
    pub fn weighted_degree(&self, node: NodeId) -> f64 {
        self.incident(node).map(|(_, e)| self.graph.prob(e)).sum()
    }

    /// `N(e)` restricted to alive edges, including `e` itself.
    pub fn neighborhood(&self, e: EdgeId) -> Vec<EdgeId> {
        let edge = self.graph.edge(e);
        let mut out: Vec<EdgeId> = self
            .incident(edge.u)
            .chain(self.incident(edge.v))
            .map(|(_, f)| f)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn drop_edge(&mut self, e: EdgeId) {
        debug_assert!(self.alive.contains(e.0));
        self.alive.set(e.0, false);
        self.alive_edges -= 1;
        let edge = *self.graph.edge(e);
        for node in [edge.u, edge.v] {
            let n = node.0;
            self.degree[n] -= 1;
            self.edge_xor[n] ^= e.0;
            match self.degree[n] {
                0 => {
                    self.leaves.set(n, false);
                    self.alive_nodes -= 1;
                }
                1 => self.leaves.insert(n),
                _ => {}
            }
        }
    }

    /// In-place `R \ e`.
    pub fn remove_edge_mut(&mut self, e: EdgeId) -> Result<(), GraphError> {
        if !self.is_alive(e) {
            return Err(GraphError::EdgeNotAlive(e));
        }
        self.drop_edge(e);
        Ok(())
    }

    /// In-place `R \ N(e)`: both endpoints of `e` die.
    pub fn remove_neighborhood_mut(&mut self, e: EdgeId) -> Result<(), GraphError> {
        if !self.is_alive(e) {
            return Err(GraphError::EdgeNotAlive(e));
        }
        let edge = *self.graph.edge(e);
        for node in [edge.u, edge.v] {
            for &(_, f) in self.graph.incident(node) {
                if self.alive.contains(f.0) {
                    self.drop_edge(f);
                }
            }
        }
        Ok(())
    }

    /// `R \ e` as a new view.
    pub fn remove_edge(&self, e: EdgeId) -> Result<Self, GraphError> {
        let mut next = self.clone();
        next.remove_edge_mut(e)?;
        Ok(next)
    }

    /// `R \ N(e)` as a new view.
    pub fn remove_neighborhood(&self, e: EdgeId) -> Result<Self, GraphError> {
        let mut next = self.clone();
        next.remove_neighborhood_mut(e)?;
        Ok(next)
    }

    /// Intersection with `set`.
    pub fn restrict(&self, set: &EdgeSet) -> Self {
        let mut alive = self.alive.clone();
        alive.intersect_with(set);
        Self::from_set(self.graph, &alive)
    }

    #[inline]
    pub fn has_pendant(&self) -> bool {
        !self.leaves.is_clear()
    }

    /// Lowest-index alive edge with a degree-1 endpoint.
    pub fn first_pendant(&self) -> Option<EdgeId> {
        self.leaves.ones().map(|n| self.edge_xor[n]).min().map(EdgeId)
    }

    /// All alive edges with a degree-1 endpoint, ascending.
    pub fn pendant_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.leaves.ones().map(|n| EdgeId(self.edge_xor[n])).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected components as edge sets, ordered by their lowest edge.
    pub fn component_sets(&self) -> Vec<EdgeSet> {
        let m = self.graph.edge_count();
        let mut seen = FixedBitSet::with_capacity(m);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in self.alive.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = EdgeSet::with_capacity(m);
            seen.insert(start);
            stack.push(EdgeId(start));
            while let Some(e) = stack.pop() {
                comp.insert(e.0);
                let edge = self.graph.edge(e);
                for node in [edge.u, edge.v] {
                    for &(_, f) in self.graph.incident(node) {
                        if self.alive.contains(f.0) && !seen.contains(f.0) {
                            seen.insert(f.0);
                            stack.push(f);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Connected components as sorted edge lists.
    pub fn connected_components(&self) -> Vec<Vec<EdgeId>> {
        self.component_sets()
            .into_iter()
            .map(|c| c.ones().map(EdgeId).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// `e(R) - v(R)`.
    pub fn sparsity_excess(&self) -> i64 {
        self.alive_edges as i64 - self.alive_nodes as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn path(n_edges: usize, p: f64) -> WeightedGraph {
        WeightedGraph::new(n_edges + 1, (0..n_edges).map(|i| (i, i + 1, p))).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 0.5))).unwrap()
    }

    fn triangle() -> WeightedGraph {
        cycle(3)
    }

    fn k4() -> WeightedGraph {
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b, 0.5));
            }
        }
        WeightedGraph::new(4, edges).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<EdgeId> {
        v.iter().map(|&i| EdgeId(i)).collect()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, 0.0)]),
            Err(GraphError::InvalidProbability { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, 1.5)]),
            Err(GraphError::InvalidProbability { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, f64::NAN)]),
            Err(GraphError::InvalidProbability { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(1, 1, 0.5)]),
            Err(GraphError::SelfLoop { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, 0.5), (1, 0, 0.3)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [(0, 2, 0.5)]),
            Err(GraphError::NodeOutOfRange { .. })
        ));
        assert!(WeightedGraph::new(2, [(0, 1, 1.0)]).is_ok());
    }

    #[test]
    fn isolated_nodes_are_ignored() {
        let g = WeightedGraph::new(5, [(0, 1, 0.5)]).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.active_node_count(), 2);
        assert_eq!(g.view().node_count(), 2);
    }

    #[test]
    fn certain_edges_always_sampled() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert_eq!(sample_scenario(&g, &mut rng), Scenario::full(&g));
        }
    }

    #[test]
    fn sampling_frequency_matches_probability() {
        let g = WeightedGraph::new(2, [(0, 1, 0.5)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = 100_000;
        let hits = (0..k)
            .filter(|_| sample_scenario(&g, &mut rng).contains(EdgeId(0)))
            .count();
        let freq = hits as f64 / k as f64;
        assert!((freq - 0.5).abs() < 0.01, "freq {freq}");
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let g = k4();
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..20).map(|_| sample_scenario(&g, &mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            (0..20).map(|_| sample_scenario(&g, &mut rng)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn remove_edge_examples() {
        let g = path(2, 0.5);
        let r = g.view().remove_edge(EdgeId(0)).unwrap();
        assert_eq!(r.edges().collect::<Vec<_>>(), ids(&[1]));
        assert_eq!(r.node_count(), 2);

        let single = path(1, 0.5);
        let r = single.view().remove_edge(EdgeId(0)).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.node_count(), 0);

        let t = triangle();
        let r = t.view().remove_edge(EdgeId(0)).unwrap();
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.node_count(), 3);
        assert!(r.is_connected());

        assert!(matches!(
            r.remove_edge(EdgeId(0)),
            Err(GraphError::EdgeNotAlive(EdgeId(0)))
        ));
    }

    #[test]
    fn remove_neighborhood_examples() {
        let t = triangle();
        assert!(t.view().remove_neighborhood(EdgeId(1)).unwrap().is_empty());

        let p = path(3, 0.5);
        assert!(p.view().remove_neighborhood(EdgeId(1)).unwrap().is_empty());

        let star = WeightedGraph::new(4, [(0, 1, 0.5), (0, 2, 0.5), (0, 3, 0.5)]).unwrap();
        assert!(star.view().remove_neighborhood(EdgeId(2)).unwrap().is_empty());

        let r = p.view().remove_edge(EdgeId(1)).unwrap();
        assert!(matches!(
            r.remove_neighborhood(EdgeId(1)),
            Err(GraphError::EdgeNotAlive(_))
        ));
    }

    #[test]
    fn pendant_edge_examples() {
        assert_eq!(path(3, 0.5).view().pendant_edges(), ids(&[0, 2]));
        assert!(cycle(4).view().pendant_edges().is_empty());
        assert_eq!(path(1, 0.5).view().pendant_edges(), ids(&[0]));
        assert_eq!(path(3, 0.5).view().first_pendant(), Some(EdgeId(0)));
    }

    #[test]
    fn component_examples() {
        let two = WeightedGraph::new(4, [(0, 1, 0.5), (2, 3, 0.5)]).unwrap();
        assert_eq!(two.view().connected_components().len(), 2);
        assert_eq!(triangle().view().connected_components().len(), 1);
        let t = triangle();
        let empty = t.view().remove_neighborhood(EdgeId(0)).unwrap();
        assert_eq!(empty.connected_components().len(), 0);
    }

    #[test]
    fn sparsity_examples() {
        let tree = WeightedGraph::new(5, [(0, 1, 0.5), (1, 2, 0.5), (1, 3, 0.5), (3, 4, 0.5)]).unwrap();
        assert_eq!(tree.sparsity_excess(), -1);
        assert_eq!(cycle(6).sparsity_excess(), 0);
        assert_eq!(k4().sparsity_excess(), 2);
        assert_eq!(k4().view().sparsity_excess(), 2);
    }

    #[test]
    fn scenario_probabilities_sum_to_one() {
        let g = WeightedGraph::new(3, [(0, 1, 0.3), (1, 2, 0.8), (0, 2, 0.55)]).unwrap();
        let total: f64 = Scenario::enumerate(&g).map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matching_rejects_shared_endpoint() {
        let g = path(2, 0.5);
        assert!(Matching::from_edges(&g, ids(&[0, 1])).is_err());
        let m = Matching::from_edges(&g, ids(&[1])).unwrap();
        assert!(m.covers(&g, NodeId(2)));
        assert!(!m.covers(&g, NodeId(0)));
    }
}
