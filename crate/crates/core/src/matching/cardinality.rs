//! Maximum-cardinality matching on general graphs (Edmonds' blossom
//! algorithm, BFS variant with base contraction).

use std::collections::VecDeque;

use crate::graph::{EdgeId, EdgeSet, Matching, ResidualView, Scenario, WeightedGraph};

const NONE: usize = usize::MAX;

/// Reusable buffers for repeated matching computations on one base graph.
/// Nodes are compacted to those touched by the current edge set.
#[derive(Debug, Default, Clone)]
pub struct CardinalityMatcher {
    local: Vec<usize>,
    nodes: Vec<usize>,
    adj_start: Vec<usize>,
    adj: Vec<(usize, usize)>,
    degree: Vec<usize>,
    mate: Vec<usize>,
    mate_edge: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl CardinalityMatcher {
    pub fn new() -> Self {
        Self::default()
    }

    /// Size of a maximum matching among the edges of `edges`.
    pub fn size(&mut self, g: &WeightedGraph, edges: &EdgeSet) -> usize {
        self.solve(g, edges);
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    /// A maximum matching among the edges of `edges`.
    pub fn matching(&mut self, g: &WeightedGraph, edges: &EdgeSet) -> Matching {
        self.solve(g, edges);
        let mut out: Vec<EdgeId> = (0..self.nodes.len())
            .filter(|&v| self.mate[v] != NONE && v < self.mate[v])
            .map(|v| EdgeId(self.mate_edge[v]))
            .collect();
        out.sort_unstable();
        Matching::from_sorted_unchecked(out)
    }

    fn build(&mut self, g: &WeightedGraph, edges: &EdgeSet) {
        self.local.clear();
        self.local.resize(g.node_count(), NONE);
        self.nodes.clear();
        for i in edges.ones() {
            let e = g.edge(EdgeId(i));
            for x in [e.u.0, e.v.0] {
                if self.local[x] == NONE {
                    self.local[x] = self.nodes.len();
                    self.nodes.push(x);
                }
            }
        }
        let n = self.nodes.len();
        self.degree.clear();
        self.degree.resize(n + 1, 0);
        for i in edges.ones() {
            let e = g.edge(EdgeId(i));
            self.degree[self.local[e.u.0]] += 1;
            self.degree[self.local[e.v.0]] += 1;
        }
        self.adj_start.clear();
        self.adj_start.push(0);
        for v in 0..n {
            let next = self.adj_start[v] + self.degree[v];
            self.adj_start.push(next);
        }
        self.adj.clear();
        self.adj.resize(self.adj_start[n], (NONE, NONE));
        let mut fill: Vec<usize> = self.adj_start[..n].to_vec();
        for i in edges.ones() {
            let e = g.edge(EdgeId(i));
            let (a, b) = (self.local[e.u.0], self.local[e.v.0]);
            self.adj[fill[a]] = (b, i);
            fill[a] += 1;
            self.adj[fill[b]] = (a, i);
            fill[b] += 1;
        }
    }

    fn solve(&mut self, g: &WeightedGraph, edges: &EdgeSet) {
        self.build(g, edges);
        let n = self.nodes.len();
        self.mate.clear();
        self.mate.resize(n, NONE);
        self.mate_edge.clear();
        self.mate_edge.resize(n, NONE);
        self.parent.resize(n, NONE);
        self.base.resize(n, 0);
        self.used.resize(n, false);
        self.blossom.resize(n, false);
        self.lca_mark.resize(n, false);

        // greedy start, ascending edge index
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            for k in self.adj_start[v]..self.adj_start[v + 1] {
                let (w, id) = self.adj[k];
                if self.mate[w] == NONE {
                    self.mate[v] = w;
                    self.mate[w] = v;
                    self.mate_edge[v] = id;
                    self.mate_edge[w] = id;
                    break;
                }
            }
        }
        // a root with no augmenting path never gets one later
        for root in 0..n {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            let id = self.edge_between(v, pv);
            self.mate[v] = pv;
            self.mate[pv] = v;
            self.mate_edge[v] = id;
            self.mate_edge[pv] = id;
            v = ppv;
        }
    }

    fn edge_between(&self, a: usize, b: usize) -> usize {
        let (lo, hi) = (self.adj_start[a], self.adj_start[a + 1]);
        self.adj[lo..hi]
            .iter()
            .find(|(w, _)| *w == b)
            .map(|(_, id)| *id)
            .expect("adjacent nodes")
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|m| *m = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.nodes.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in self.adj_start[v]..self.adj_start[v + 1] {
                let to = self.adj[k].0;
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Maximum-cardinality matching of the alive subgraph.
pub fn max_cardinality_matching(r: &ResidualView<'_>) -> Matching {
    CardinalityMatcher::new().matching(r.graph(), r.alive_set())
}

/// `μ(G)`.
pub fn matching_number(g: &WeightedGraph) -> usize {
    CardinalityMatcher::new().size(g, &g.full_edge_set())
}

/// `μ(σ)`.
pub fn scenario_matching_number(g: &WeightedGraph, s: &Scenario) -> usize {
    CardinalityMatcher::new().size(g, s.as_set())
}
