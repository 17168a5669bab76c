//! Brute-force optimal values by the Bellman recursion over residual
//! graphs, memoized on the alive-edge bitmask.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::ExactError;
use crate::graph::{EdgeId, ResidualView, WeightedGraph};
use crate::simulator::{QueryHistory, Strategy};

use super::tree::DecisionTree;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Largest accepted `e(G)`.
    pub max_edges: usize,
    /// Largest memo table before giving up.
    pub memo_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_edges: 18,
            memo_limit: 1 << 22,
        }
    }
}

struct Oracle {
    p: Vec<f64>,
    /// Bitmask of `N(e)` for each edge, including `e`.
    nbhd: Vec<u64>,
    memo: HashMap<u64, (f64, u8)>,
    limit: usize,
}

impl Oracle {
    fn new(g: &WeightedGraph, cfg: OracleConfig) -> Result<Self, ExactError> {
        let m = g.edge_count();
        if m > cfg.max_edges || m > 64 {
            return Err(ExactError::TooManyEdges {
                edges: m,
                cap: cfg.max_edges.min(64),
            });
        }
        let nbhd = g
            .edges()
            .map(|(_, e)| {
                let mut mask = 0u64;
                for node in [e.u, e.v] {
                    for &(_, f) in g.incident(node) {
                        mask |= 1 << f.0;
                    }
                }
                mask
            })
            .collect();
        Ok(Self {
            p: g.edges().map(|(_, e)| e.p).collect(),
            nbhd,
            memo: HashMap::new(),
            limit: cfg.memo_limit,
        })
    }

    fn value(&mut self, mask: u64) -> Result<f64, ExactError> {
        if mask == 0 {
            return Ok(0.0);
        }
        if let Some(&(v, _)) = self.memo.get(&mask) {
            return Ok(v);
        }
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0u8;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let p = self.p[e];
            let mut v = p * (1.0 + self.value(mask & !self.nbhd[e])?);
            if p < 1.0 {
                v += (1.0 - p) * self.value(mask & !(1 << e))?;
            }
            if v > best {
                best = v;
                arg = e as u8;
            }
        }
        if self.memo.len() >= self.limit {
            return Err(ExactError::MemoOverflow { limit: self.limit });
        }
        self.memo.insert(mask, (best, arg));
        Ok(best)
    }

    fn tree(&mut self, mask: u64) -> Result<DecisionTree, ExactError> {
        if mask == 0 {
            return Ok(DecisionTree::Leaf);
        }
        self.value(mask)?;
        let e = self.memo[&mask].1 as usize;
        let yes = self.tree(mask & !self.nbhd[e])?;
        let no = self.tree(mask & !(1 << e))?;
        Ok(DecisionTree::query(EdgeId(e), yes, no))
    }
}

fn full_mask(g: &WeightedGraph) -> u64 {
    match g.edge_count() {
        64 => u64::MAX,
        m => (1u64 << m) - 1,
    }
}

/// `OPT(G)`, the best expected matching size of any strategy.
pub fn opt_value(g: &WeightedGraph) -> Result<f64, ExactError> {
    opt_value_with(g, OracleConfig::default())
}

pub fn opt_value_with(g: &WeightedGraph, cfg: OracleConfig) -> Result<f64, ExactError> {
    Oracle::new(g, cfg)?.value(full_mask(g))
}

/// An optimal decision tree; ties go to the lowest edge index.
pub fn opt_strategy(g: &WeightedGraph) -> Result<DecisionTree, ExactError> {
    opt_strategy_with(g, OracleConfig::default())
}

pub fn opt_strategy_with(g: &WeightedGraph, cfg: OracleConfig) -> Result<DecisionTree, ExactError> {
    Oracle::new(g, cfg)?.tree(full_mask(g))
}

/// Optimal strategy that looks up the best edge of the current residual
/// graph on demand. Clones share the memo table.
///
/// # Panics
///
/// `next_query` panics if the memo limit is exceeded.
#[derive(Clone, Debug)]
pub struct OptStrategy {
    oracle: Arc<Mutex<Oracle>>,
}

impl std::fmt::Debug for Oracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Oracle").field("memo", &self.memo.len()).finish()
    }
}

impl Strategy for OptStrategy {
    fn name(&self) -> String {
        "opt".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        let mask = r.edges().fold(0u64, |m, e| m | 1 << e.0);
        if mask == 0 {
            return None;
        }
        let mut oracle = self.oracle.lock().expect("oracle lock");
        oracle.value(mask).expect("oracle memo limit");
        Some(EdgeId(oracle.memo[&mask].1 as usize))
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// [`OptStrategy`] for `g`, under the same edge cap as [`opt_value`].
pub fn opt_online(g: &WeightedGraph) -> Result<OptStrategy, ExactError> {
    Ok(OptStrategy {
        oracle: Arc::new(Mutex::new(Oracle::new(g, OracleConfig::default())?)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::tree::evaluate_tree;

    #[test]
    fn single_edge_and_empty() {
        let g = WeightedGraph::new(2, [(0, 1, 0.42)]).unwrap();
        assert!((opt_value(&g).unwrap() - 0.42).abs() < 1e-15);
        let empty = WeightedGraph::new(0, []).unwrap();
        assert_eq!(opt_value(&empty).unwrap(), 0.0);
        assert_eq!(opt_strategy(&empty).unwrap(), DecisionTree::Leaf);
        let t = opt_strategy(&g).unwrap();
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn two_path_is_order_independent() {
        let (p1, p2) = (0.3, 0.8);
        let g = WeightedGraph::new(3, [(0, 1, p1), (1, 2, p2)]).unwrap();
        let want = p1 + p2 - p1 * p2;
        assert!((opt_value(&g).unwrap() - want).abs() < 1e-12);
        let a = DecisionTree::query(
            EdgeId(0),
            DecisionTree::Leaf,
            DecisionTree::query(EdgeId(1), DecisionTree::Leaf, DecisionTree::Leaf),
        );
        let b = DecisionTree::query(
            EdgeId(1),
            DecisionTree::Leaf,
            DecisionTree::query(EdgeId(0), DecisionTree::Leaf, DecisionTree::Leaf),
        );
        assert!((evaluate_tree(&a, &g).unwrap() - want).abs() < 1e-12);
        assert!((evaluate_tree(&b, &g).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn uniform_triangle() {
        let g = WeightedGraph::new(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)]).unwrap();
        assert!((opt_value(&g).unwrap() - 0.875).abs() < 1e-12);
        let t = opt_strategy(&g).unwrap();
        assert!((evaluate_tree(&t, &g).unwrap() - 0.875).abs() < 1e-12);
    }

    #[test]
    fn online_matches_value() {
        let g = WeightedGraph::new(4, [(0, 1, 0.3), (1, 2, 0.6), (2, 3, 0.2), (0, 3, 0.9), (0, 2, 0.5)])
            .unwrap();
        let s = opt_online(&g).unwrap();
        let v = crate::simulator::strategy_value(&g, &s).unwrap();
        assert!((v - opt_value(&g).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cap_enforced() {
        let g = WeightedGraph::new(40, (0..19).map(|i| (2 * i, 2 * i + 1, 0.5))).unwrap();
        assert!(matches!(opt_value(&g), Err(ExactError::TooManyEdges { .. })));
        let cfg = OracleConfig {
            max_edges: 30,
            memo_limit: 10,
        };
        assert!(matches!(opt_value_with(&g, cfg), Err(ExactError::MemoOverflow { .. })));
    }

    #[test]
    fn certain_disjoint_edge_adds_one() {
        let g = WeightedGraph::new(4, [(0, 1, 0.3), (1, 2, 0.6), (2, 3, 0.2), (0, 3, 0.9)]).unwrap();
        let mut edges: Vec<_> = g.edges().map(|(_, e)| (e.u.0, e.v.0, e.p)).collect();
        edges.push((4, 5, 1.0));
        let h = WeightedGraph::new(6, edges).unwrap();
        assert!((opt_value(&h).unwrap() - opt_value(&g).unwrap() - 1.0).abs() < 1e-12);
    }
}
