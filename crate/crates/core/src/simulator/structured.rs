//! Strategies for complete bipartite graphs, cliques, and kidney instances
//! split by blood type.

use crate::blood::{AboPair, AboType};
use crate::error::StrategyError;
use crate::graph::{EdgeId, NodeId, ResidualView, WeightedGraph};

use super::{QueryHistory, Strategy};

/// Works through the class `U` one node at a time, starting from the last
/// node of `u`, querying every surviving edge to `V` in ascending index
/// order before moving to the previous node.
#[derive(Clone, Debug)]
pub struct BipartiteSequential {
    /// Edge lists in query order, one per `U` node.
    rounds: Vec<Vec<EdgeId>>,
    round: usize,
    pos: usize,
}

impl BipartiteSequential {
    /// `u` and `v` must be disjoint and every `u × v` pair must be an edge.
    pub fn new(g: &WeightedGraph, u: &[NodeId], v: &[NodeId]) -> Result<Self, StrategyError> {
        let mut rounds = Vec::with_capacity(u.len());
        for &a in u.iter().rev() {
            let mut edges = Vec::with_capacity(v.len());
            for &b in v {
                if a == b {
                    return Err(StrategyError::NotCompleteBipartite(format!(
                        "node {a} is in both classes"
                    )));
                }
                let e = g.find_edge(a, b).ok_or_else(|| {
                    StrategyError::NotCompleteBipartite(format!("missing edge {a}-{b}"))
                })?;
                edges.push(e);
            }
            edges.sort_unstable();
            rounds.push(edges);
        }
        Ok(Self {
            rounds,
            round: 0,
            pos: 0,
        })
    }
}

impl Strategy for BipartiteSequential {
    fn name(&self) -> String {
        "bipartiteSequential".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        while let Some(edges) = self.rounds.get(self.round) {
            while let Some(&e) = edges.get(self.pos) {
                self.pos += 1;
                if r.is_alive(e) {
                    return Some(e);
                }
            }
            self.round += 1;
            self.pos = 0;
        }
        None
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Bipartite strategy for a graph whose edges all run between `u` and the
/// remaining nodes, with every such pair present. `u` is given in the order
/// `u_1, ..., u_k`; `u_k` is handled first.
pub fn bipartite_sequential(
    g: &WeightedGraph,
    u: &[NodeId],
) -> Result<BipartiteSequential, StrategyError> {
    let mut in_u = vec![false; g.node_count()];
    for &a in u {
        in_u[a.0] = true;
    }
    for (_, e) in g.edges() {
        if in_u[e.u.0] == in_u[e.v.0] {
            return Err(StrategyError::NotCompleteBipartite(format!(
                "edge {}-{} stays inside one class",
                e.u, e.v
            )));
        }
    }
    let v: Vec<NodeId> = g
        .view()
        .nodes()
        .filter(|n| !in_u[n.0])
        .collect();
    BipartiteSequential::new(g, u, &v)
}

fn check_complete(g: &WeightedGraph, nodes: &[NodeId]) -> Result<(), StrategyError> {
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            if g.find_edge(a, b).is_none() {
                return Err(StrategyError::NotComplete(a.0, b.0));
            }
        }
    }
    Ok(())
}

/// Clique strategy restricted to `nodes` (sorted by id): the first
/// `⌊k/2⌋` nodes form `U`, the next `⌊k/2⌋` form `V`, and the bipartite
/// strategy runs on that pair. A leftover odd node is never matched.
fn clique_on(g: &WeightedGraph, nodes: &[NodeId]) -> Result<BipartiteSequential, StrategyError> {
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();
    check_complete(g, &nodes)?;
    let half = nodes.len() / 2;
    BipartiteSequential::new(g, &nodes[..half], &nodes[half..2 * half])
}

/// Clique strategy on a complete graph.
pub fn clique_strategy(g: &WeightedGraph) -> Result<BipartiteSequential, StrategyError> {
    let nodes: Vec<NodeId> = g.view().nodes().collect();
    clique_on(g, &nodes)
}

/// Runs several strategies one after the other; each runs until it stops.
#[derive(Clone)]
pub struct Sequence {
    name: String,
    parts: Vec<Box<dyn Strategy>>,
    current: usize,
}

impl Sequence {
    pub fn new(name: impl Into<String>, parts: Vec<Box<dyn Strategy>>) -> Self {
        Self {
            name: name.into(),
            parts,
            current: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl Strategy for Sequence {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, history: &QueryHistory) -> Option<EdgeId> {
        while let Some(part) = self.parts.get_mut(self.current) {
            if let Some(e) = part.next_query(r, history) {
                return Some(e);
            }
            self.current += 1;
        }
        None
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Groups nodes by patient/donor blood type. For each pair of types
/// `i < j` it matches group `i/j` against group `j/i` (both trimmed to the
/// smaller size, keeping the lowest node ids) with the bipartite strategy,
/// then treats every group `i/i` as a clique. Edges across other groups are
/// never queried.
pub fn blood_type_decomposition(g: &WeightedGraph) -> Result<Sequence, StrategyError> {
    let labels = g.labels().ok_or(StrategyError::MissingLabels)?;
    let mut groups: Vec<Vec<NodeId>> = vec![Vec::new(); 16];
    for node in g.view().nodes() {
        groups[labels[node.0].index()].push(node);
    }
    let mut parts: Vec<Box<dyn Strategy>> = Vec::new();
    for (a, &i) in AboType::ALL.iter().enumerate() {
        for &j in &AboType::ALL[a + 1..] {
            let ij = &groups[AboPair::new(i, j).index()];
            let ji = &groups[AboPair::new(j, i).index()];
            let k = ij.len().min(ji.len());
            if k == 0 {
                continue;
            }
            let s = BipartiteSequential::new(g, &ij[..k], &ji[..k]).map_err(|e| {
                StrategyError::ModelViolation {
                    group: format!("{}/{} x {}/{}", i, j, j, i),
                    reason: e.to_string(),
                }
            })?;
            parts.push(Box::new(s));
        }
    }
    for i in AboType::ALL {
        let group = &groups[AboPair::new(i, i).index()];
        if group.len() < 2 {
            continue;
        }
        let s = clique_on(g, group).map_err(|e| StrategyError::ModelViolation {
            group: format!("{i}/{i}"),
            reason: e.to_string(),
        })?;
        parts.push(Box::new(s));
    }
    Ok(Sequence::new("bloodDecomp", parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Scenario;
    use crate::simulator::{run, strategy_value};

    fn complete_bipartite(k: usize, p: f64) -> WeightedGraph {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in 0..k {
                edges.push((a, k + b, p));
            }
        }
        WeightedGraph::new(2 * k, edges).unwrap()
    }

    fn complete(k: usize, p: f64) -> WeightedGraph {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                edges.push((a, b, p));
            }
        }
        WeightedGraph::new(k, edges).unwrap()
    }

    fn u_nodes(k: usize) -> Vec<NodeId> {
        (0..k).map(NodeId).collect()
    }

    #[test]
    fn single_edge_value() {
        let g = complete_bipartite(1, 0.3);
        let s = bipartite_sequential(&g, &u_nodes(1)).unwrap();
        assert!((strategy_value(&g, &s).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn certain_edges_give_perfect_matching() {
        let g = complete_bipartite(4, 1.0);
        let mut s = bipartite_sequential(&g, &u_nodes(4)).unwrap();
        assert_eq!(run(&g, &mut s, &Scenario::full(&g)).unwrap().size(), 4);
    }

    #[test]
    fn last_u_node_goes_first() {
        let g = complete_bipartite(2, 0.5);
        let mut s = bipartite_sequential(&g, &u_nodes(2)).unwrap();
        let r = run(&g, &mut s, &Scenario::empty(&g)).unwrap();
        let firsts: Vec<NodeId> = r.history.entries().iter().map(|(e, _)| g.edge(*e).u).collect();
        assert_eq!(firsts, vec![NodeId(1), NodeId(1), NodeId(0), NodeId(0)]);
    }

    #[test]
    fn rejects_non_bipartite() {
        let t = complete(3, 0.5);
        assert!(bipartite_sequential(&t, &[NodeId(0)]).is_err());
        let mut g = complete_bipartite(2, 0.5);
        g = WeightedGraph::new(4, g.edges().skip(1).map(|(_, e)| (e.u.0, e.v.0, e.p))).unwrap();
        assert!(bipartite_sequential(&g, &u_nodes(2)).is_err());
    }

    #[test]
    fn clique_examples() {
        let k2 = complete(2, 0.4);
        let s = clique_strategy(&k2).unwrap();
        assert!((strategy_value(&k2, &s).unwrap() - 0.4).abs() < 1e-12);
        let k3 = complete(3, 1.0);
        let s = clique_strategy(&k3).unwrap();
        assert!((strategy_value(&k3, &s).unwrap() - 1.0).abs() < 1e-12);
        let mut broken = WeightedGraph::new(3, [(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        assert!(clique_strategy(&broken).is_err());
        broken = complete(4, 0.5);
        assert!(clique_strategy(&broken).is_ok());
    }

    fn labeled(pairs: &[&str], p: f64) -> WeightedGraph {
        let labels: Vec<AboPair> = pairs.iter().map(|s| s.parse().unwrap()).collect();
        let mut edges = Vec::new();
        for a in 0..labels.len() {
            for b in a + 1..labels.len() {
                if labels[a].cross_compatible(labels[b]) {
                    edges.push((a, b, p));
                }
            }
        }
        WeightedGraph::new(labels.len(), edges)
            .unwrap()
            .with_labels(labels)
            .unwrap()
    }

    #[test]
    fn blood_decomposition_matches_swapping_groups() {
        let g = labeled(&["A/B", "B/A", "A/B", "B/A", "A/B", "B/A"], 1.0);
        let mut s = blood_type_decomposition(&g).unwrap();
        assert_eq!(run(&g, &mut s, &Scenario::full(&g)).unwrap().size(), 3);
    }

    #[test]
    fn blood_decomposition_single_type_is_clique() {
        let g = labeled(&["A/A", "A/A", "A/A", "A/A"], 0.5);
        let d = blood_type_decomposition(&g).unwrap();
        let c = clique_strategy(&g).unwrap();
        let a = strategy_value(&g, &d).unwrap();
        let b = strategy_value(&g, &c).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(blood_type_decomposition(&complete(3, 0.5)).is_err());
    }
}
