//! Explicit decision trees: evaluation, rendering, and expansion of a
//! strategy into its tree.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::ExactError;
use crate::graph::{EdgeId, ResidualView, Scenario, WeightedGraph};
use crate::simulator::{run_size, QueryHistory, Strategy};

/// Binary policy tree. `yes` is followed when the queried edge exists.
#[derive(Clone, Debug, PartialEq)]
pub enum DecisionTree {
    Leaf,
    Query {
        edge: EdgeId,
        yes: Box<DecisionTree>,
        no: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn query(edge: EdgeId, yes: DecisionTree, no: DecisionTree) -> Self {
        DecisionTree::Query {
            edge,
            yes: Box::new(yes),
            no: Box::new(no),
        }
    }

    /// Number of query nodes.
    pub fn size(&self) -> usize {
        match self {
            DecisionTree::Leaf => 0,
            DecisionTree::Query { yes, no, .. } => 1 + yes.size() + no.size(),
        }
    }

    /// Longest root-to-leaf chain of query nodes.
    pub fn height(&self) -> usize {
        match self {
            DecisionTree::Leaf => 0,
            DecisionTree::Query { yes, no, .. } => 1 + yes.height().max(no.height()),
        }
    }

    /// Indented text form: `query <u>-<v> p=<p>` with `yes:`/`no:` children.
    pub fn render(&self, g: &WeightedGraph) -> String {
        fn go(t: &DecisionTree, g: &WeightedGraph, depth: usize, out: &mut String) {
            let pad = "  ".repeat(depth);
            match t {
                DecisionTree::Leaf => writeln!(out, "{pad}stop").unwrap(),
                DecisionTree::Query { edge, yes, no } => {
                    let e = g.edge(*edge);
                    writeln!(out, "{pad}query {}-{} p={}", e.u, e.v, e.p).unwrap();
                    writeln!(out, "{pad}yes:").unwrap();
                    go(yes, g, depth + 1, out);
                    writeln!(out, "{pad}no:").unwrap();
                    go(no, g, depth + 1, out);
                }
            }
        }
        let mut out = String::new();
        go(self, g, 0, &mut out);
        out
    }
}

/// Expected matching size of `t` on `g`:
/// `p_e (1 + E[yes]) + (1 - p_e) E[no]` at every query node.
pub fn evaluate_tree(t: &DecisionTree, g: &WeightedGraph) -> Result<f64, ExactError> {
    fn go(t: &DecisionTree, r: &ResidualView<'_>) -> Result<f64, ExactError> {
        match t {
            DecisionTree::Leaf => Ok(0.0),
            DecisionTree::Query { edge, yes, no } => {
                if edge.0 >= r.graph().edge_count() || !r.is_alive(*edge) {
                    return Err(ExactError::InvalidTree(format!(
                        "edge {edge} queried but not permissible"
                    )));
                }
                let p = r.graph().prob(*edge);
                let y = go(yes, &r.remove_neighborhood(*edge).expect("alive"))?;
                let n = go(no, &r.remove_edge(*edge).expect("alive"))?;
                Ok(p * (1.0 + y) + (1.0 - p) * n)
            }
        }
    }
    go(t, &g.view())
}

/// Builds the tree a strategy induces by branching on both outcomes of
/// each query. Exponential in the number of queries.
pub fn expand_strategy(g: &WeightedGraph, s: &dyn Strategy) -> Result<DecisionTree, ExactError> {
    fn go(
        r: &ResidualView<'_>,
        s: &mut dyn Strategy,
        h: &mut QueryHistory,
    ) -> Result<DecisionTree, ExactError> {
        if r.is_empty() {
            return Ok(DecisionTree::Leaf);
        }
        let Some(e) = s.next_query(r, h) else {
            return Ok(DecisionTree::Leaf);
        };
        if !r.is_alive(e) {
            return Err(ExactError::InvalidTree(format!(
                "strategy `{}` queried dead edge {e}",
                s.name()
            )));
        }
        let mut s_yes = s.clone_box();
        let mut h_yes = h.clone();
        h_yes.push(e, true);
        let yes = go(&r.remove_neighborhood(e).expect("alive"), s_yes.as_mut(), &mut h_yes)?;
        h.push(e, false);
        let no = go(&r.remove_edge(e).expect("alive"), s, h)?;
        Ok(DecisionTree::query(e, yes, no))
    }
    let mut s = s.clone_box();
    go(&g.view(), s.as_mut(), &mut QueryHistory::new())
}

/// `Σ_σ Pr(σ) |M(S, G)(σ)|` over all `2^e(G)` realizations.
pub fn exhaustive_value(g: &WeightedGraph, s: &dyn Strategy) -> Result<f64, ExactError> {
    let mut total = 0.0;
    for (sigma, pr) in Scenario::enumerate(g) {
        let mut run = s.clone_box();
        total += pr * run_size(g, run.as_mut(), &sigma)? as f64;
    }
    Ok(total)
}

/// Follows a fixed decision tree.
#[derive(Clone, Debug)]
pub struct TreeStrategy {
    tree: Arc<DecisionTree>,
    path: Vec<bool>,
    seen: usize,
}

impl TreeStrategy {
    pub fn new(tree: DecisionTree) -> Self {
        Self {
            tree: Arc::new(tree),
            path: Vec::new(),
            seen: 0,
        }
    }

    fn node(&self) -> &DecisionTree {
        let mut t: &DecisionTree = &self.tree;
        for &yes in &self.path {
            t = match t {
                DecisionTree::Query { yes: y, no: n, .. } => {
                    if yes {
                        y
                    } else {
                        n
                    }
                }
                DecisionTree::Leaf => return t,
            };
        }
        t
    }
}

impl Strategy for TreeStrategy {
    fn name(&self) -> String {
        "tree".into()
    }

    fn next_query(&mut self, _: &ResidualView<'_>, h: &QueryHistory) -> Option<EdgeId> {
        for &(_, success) in &h.entries()[self.seen..] {
            self.path.push(success);
        }
        self.seen = h.len();
        match self.node() {
            DecisionTree::Leaf => None,
            DecisionTree::Query { edge, .. } => Some(*edge),
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
