#![allow(dead_code)]

use rand::Rng;

use query_commit::WeightedGraph;

/// Probability drawn uniformly from the open interval (0, 1).
pub fn open_unit<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let p: f64 = rng.random();
        if p > 0.0 {
            return p;
        }
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Random tree on `n` nodes: node `i > 0` hangs off a uniform earlier node,
/// then labels are shuffled through a random permutation.
pub fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    (1..n)
        .map(|i| key(perm[i], perm[rng.random_range(0..i)]))
        .collect()
}

/// Connected graph with at most `max_edges` edges and `e - v <= max_excess`.
pub fn random_connected<R: Rng>(rng: &mut R, max_edges: usize, max_excess: i64) -> WeightedGraph {
    let n = rng.random_range(2..=max_edges + 1);
    let mut edges = random_tree_edges(rng, n);
    let room = (max_edges - edges.len()).min((max_excess + 1).max(0) as usize);
    let extra = rng.random_range(0..=room);
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 100 {
        tries += 1;
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b && !edges.contains(&key(a, b)) {
            edges.push(key(a, b));
        }
    }
    with_probs(rng, n, edges)
}

/// Forest: a random tree on `n` nodes with some edges dropped.
pub fn random_forest<R: Rng>(rng: &mut R, max_edges: usize) -> WeightedGraph {
    let n = rng.random_range(2..=max_edges + 1);
    let edges: Vec<_> = random_tree_edges(rng, n)
        .into_iter()
        .filter(|_| rng.random_bool(0.8))
        .collect();
    with_probs(rng, n, edges)
}

/// Arbitrary simple graph on up to `max_nodes` nodes with up to `max_edges`
/// edges.
pub fn random_graph<R: Rng>(rng: &mut R, max_nodes: usize, max_edges: usize) -> WeightedGraph {
    let n = rng.random_range(2..=max_nodes);
    let target = rng.random_range(1..=max_edges.min(n * (n - 1) / 2));
    let mut edges = Vec::new();
    while edges.len() < target {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b && !edges.contains(&key(a, b)) {
            edges.push(key(a, b));
        }
    }
    with_probs(rng, n, edges)
}

pub fn with_probs<R: Rng>(rng: &mut R, n: usize, edges: Vec<(usize, usize)>) -> WeightedGraph {
    let weighted: Vec<_> = edges.into_iter().map(|(a, b)| (a, b, open_unit(rng))).collect();
    WeightedGraph::new(n, weighted).expect("valid random graph")
}
