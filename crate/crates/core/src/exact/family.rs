//! Contracted decision trees whose nodes either query one edge touching
//! `V≥3` or sweep a path, and the family of all such trees.

use std::collections::HashMap;

use crate::error::ExactError;
use crate::graph::{EdgeId, EdgeSet, WeightedGraph};

use super::decompose::SparseDecomposition;
use super::path::{path_dp_probs, sweep_order};
use super::tree::DecisionTree;

/// Sub-strategy at a CDT node. Two nodes carry the same strategy iff their
/// kinds and defining edges agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CdtStrategy {
    Query(EdgeId),
    Sweep { path: usize, edge: EdgeId },
}

impl CdtStrategy {
    pub fn edge(self) -> EdgeId {
        match self {
            CdtStrategy::Query(e) | CdtStrategy::Sweep { edge: e, .. } => e,
        }
    }
}

/// Expected gain of one sub-strategy and the distribution of residual
/// graphs it leaves behind. Residuals are distinct and have positive
/// probability.
#[derive(Clone, Debug)]
pub struct Outcomes {
    pub gain: f64,
    pub children: Vec<(EdgeSet, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cdt {
    pub residual: EdgeSet,
    pub strategy: Option<CdtStrategy>,
    pub children: Vec<Cdt>,
}

impl Cdt {
    pub fn leaf(residual: EdgeSet) -> Self {
        Self {
            residual,
            strategy: None,
            children: Vec::new(),
        }
    }

    pub fn height(&self) -> usize {
        match self.strategy {
            None => 0,
            Some(_) => 1 + self.children.iter().map(Cdt::height).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self.strategy {
            None => 0,
            Some(_) => 1 + self.children.iter().map(Cdt::size).sum::<usize>(),
        }
    }
}

/// Strategies allowed at residual `h`, in ascending order of their edge.
pub fn family_actions(dec: &SparseDecomposition, h: &EdgeSet) -> Vec<CdtStrategy> {
    h.ones()
        .filter(|&i| dec.edges.contains(i))
        .map(|i| {
            let e = EdgeId(i);
            match dec.path_of(e) {
                Some((path, _)) => CdtStrategy::Sweep { path, edge: e },
                None => CdtStrategy::Query(e),
            }
        })
        .collect()
}

fn push_outcome(children: &mut Vec<(EdgeSet, f64)>, set: EdgeSet, pr: f64) {
    if pr <= 0.0 {
        return;
    }
    match children.iter_mut().find(|(s, _)| *s == set) {
        Some((_, p)) => *p += pr,
        None => children.push((set, pr)),
    }
}

/// Runs `s` at residual `h` in closed form.
pub fn outcomes(
    g: &WeightedGraph,
    dec: &SparseDecomposition,
    h: &EdgeSet,
    s: CdtStrategy,
) -> Result<Outcomes, ExactError> {
    let e = s.edge();
    if !h.contains(e.0) {
        return Err(ExactError::InvalidCdt(format!("{e} is not in the residual graph")));
    }
    let mut children = Vec::with_capacity(4);
    match s {
        CdtStrategy::Query(e) => {
            if !dec.is_incident(e) {
                return Err(ExactError::InvalidCdt(format!("{e} does not touch V>=3")));
            }
            let p = g.prob(e);
            let edge = g.edge(e);
            let mut yes = h.clone();
            for node in [edge.u, edge.v] {
                for &(_, f) in g.incident(node) {
                    yes.set(f.0, false);
                }
            }
            let mut no = h.clone();
            no.set(e.0, false);
            push_outcome(&mut children, yes, p);
            push_outcome(&mut children, no, 1.0 - p);
            Ok(Outcomes { gain: p, children })
        }
        CdtStrategy::Sweep { path, edge } => {
            let comp = dec
                .paths
                .get(path)
                .ok_or_else(|| ExactError::InvalidCdt(format!("no path {path}")))?;
            let a = comp.position(edge).ok_or(ExactError::NotOnPath {
                edge,
                path: comp.head().0,
            })?;
            let p: Vec<f64> = comp
                .edges
                .iter()
                .map(|f| if h.contains(f.0) { g.prob(*f) } else { 0.0 })
                .collect();
            let dp = path_dp_probs(&p, a);
            let mut base = h.clone();
            for f in &comp.edges {
                base.set(f.0, false);
            }
            for (k, &pr) in dp.outcomes.iter().enumerate() {
                let mut set = base.clone();
                if k & 2 != 0 {
                    for f in &comp.head_boundary {
                        set.set(f.0, false);
                    }
                }
                if k & 1 != 0 {
                    for f in &comp.tail_boundary {
                        set.set(f.0, false);
                    }
                }
                push_outcome(&mut children, set, pr);
            }
            Ok(Outcomes {
                gain: dp.expected_size,
                children,
            })
        }
    }
}

/// Expected matching size of the CDT `t`, bottom-up.
pub fn evaluate_cdt(
    t: &Cdt,
    g: &WeightedGraph,
    dec: &SparseDecomposition,
) -> Result<f64, ExactError> {
    let Some(s) = t.strategy else {
        if !t.children.is_empty() {
            return Err(ExactError::InvalidCdt("leaf with children".into()));
        }
        return Ok(0.0);
    };
    let out = outcomes(g, dec, &t.residual, s)?;
    if out.children.len() != t.children.len() {
        return Err(ExactError::InvalidCdt(format!(
            "node {s:?} has {} children, expected {}",
            t.children.len(),
            out.children.len()
        )));
    }
    let mut total = out.gain;
    for (set, pr) in &out.children {
        let child = t
            .children
            .iter()
            .find(|c| c.residual == *set)
            .ok_or_else(|| ExactError::InvalidCdt(format!("missing child under {s:?}")))?;
        total += pr * evaluate_cdt(child, g, dec)?;
    }
    Ok(total)
}

/// Unfolds a CDT into the plain decision tree that runs each sweep query by
/// query.
pub fn expand_cdt(
    t: &Cdt,
    g: &WeightedGraph,
    dec: &SparseDecomposition,
) -> Result<DecisionTree, ExactError> {
    fn child<'t>(t: &'t Cdt, set: &EdgeSet) -> Result<&'t Cdt, ExactError> {
        t.children
            .iter()
            .find(|c| c.residual == *set)
            .ok_or_else(|| ExactError::InvalidCdt("reached a residual with no child".into()))
    }

    fn sweep(
        t: &Cdt,
        g: &WeightedGraph,
        dec: &SparseDecomposition,
        cur: &EdgeSet,
        order: &[EdgeId],
    ) -> Result<DecisionTree, ExactError> {
        let Some(pos) = order.iter().position(|e| cur.contains(e.0)) else {
            return expand_cdt(child(t, cur)?, g, dec);
        };
        let e = order[pos];
        let rest = &order[pos + 1..];
        let edge = g.edge(e);
        let mut yes = cur.clone();
        for node in [edge.u, edge.v] {
            for &(_, f) in g.incident(node) {
                yes.set(f.0, false);
            }
        }
        let mut no = cur.clone();
        no.set(e.0, false);
        let y = sweep(t, g, dec, &yes, rest)?;
        // A certain edge never fails, so that branch has no child.
        let n = if g.prob(e) < 1.0 {
            sweep(t, g, dec, &no, rest)?
        } else {
            DecisionTree::Leaf
        };
        Ok(DecisionTree::query(e, y, n))
    }

    let Some(s) = t.strategy else {
        return Ok(DecisionTree::Leaf);
    };
    let e = s.edge();
    if !t.residual.contains(e.0) {
        return Err(ExactError::InvalidCdt(format!("{e} is not in the residual graph")));
    }
    match s {
        CdtStrategy::Query(e) => {
            let out = outcomes(g, dec, &t.residual, s)?;
            let edge = g.edge(e);
            let mut yes = t.residual.clone();
            for node in [edge.u, edge.v] {
                for &(_, f) in g.incident(node) {
                    yes.set(f.0, false);
                }
            }
            let mut no = t.residual.clone();
            no.set(e.0, false);
            let has = |set: &EdgeSet| out.children.iter().any(|(c, _)| c == set);
            let y = if has(&yes) {
                expand_cdt(child(t, &yes)?, g, dec)?
            } else {
                DecisionTree::Leaf
            };
            let n = if has(&no) {
                expand_cdt(child(t, &no)?, g, dec)?
            } else {
                DecisionTree::Leaf
            };
            Ok(DecisionTree::query(e, y, n))
        }
        CdtStrategy::Sweep { path, edge } => {
            let comp = &dec.paths[path];
            let a = comp.position(edge).ok_or(ExactError::NotOnPath {
                edge,
                path: comp.head().0,
            })?;
            sweep(t, g, dec, &t.residual, &sweep_order(comp, a))
        }
    }
}

/// Optimal member of the family by dynamic programming over residual edge
/// sets. Keeps its memo so decisions can be replayed later.
#[derive(Clone, Debug)]
pub struct FamilySolver {
    dec: SparseDecomposition,
    memo: HashMap<EdgeSet, (f64, Option<CdtStrategy>)>,
    limit: usize,
}

impl FamilySolver {
    pub fn new(dec: SparseDecomposition, memo_limit: usize) -> Self {
        Self {
            dec,
            memo: HashMap::new(),
            limit: memo_limit,
        }
    }

    pub fn decomposition(&self) -> &SparseDecomposition {
        &self.dec
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Best expected matching size from residual `h`.
    pub fn value(&mut self, g: &WeightedGraph, h: &EdgeSet) -> Result<f64, ExactError> {
        Ok(self.solve(g, h)?.0)
    }

    /// Root strategy of the best member at `h`, `None` when `h` is empty.
    pub fn decision(
        &mut self,
        g: &WeightedGraph,
        h: &EdgeSet,
    ) -> Result<Option<CdtStrategy>, ExactError> {
        Ok(self.solve(g, h)?.1)
    }

    fn solve(
        &mut self,
        g: &WeightedGraph,
        h: &EdgeSet,
    ) -> Result<(f64, Option<CdtStrategy>), ExactError> {
        if h.is_clear() {
            return Ok((0.0, None));
        }
        if let Some(&hit) = self.memo.get(h) {
            return Ok(hit);
        }
        let mut best = (f64::NEG_INFINITY, None);
        for s in family_actions(&self.dec, h) {
            let out = outcomes(g, &self.dec, h, s)?;
            let mut v = out.gain;
            for (child, pr) in &out.children {
                v += pr * self.solve(g, child)?.0;
            }
            if v > best.0 {
                best = (v, Some(s));
            }
        }
        if self.memo.len() >= self.limit {
            return Err(ExactError::MemoOverflow { limit: self.limit });
        }
        self.memo.insert(h.clone(), best);
        Ok(best)
    }

    /// The optimal CDT itself.
    pub fn best_cdt(&mut self, g: &WeightedGraph, h: &EdgeSet) -> Result<Cdt, ExactError> {
        let Some(s) = self.decision(g, h)? else {
            return Ok(Cdt::leaf(h.clone()));
        };
        let out = outcomes(g, &self.dec, h, s)?;
        let children = out
            .children
            .iter()
            .map(|(c, _)| self.best_cdt(g, c))
            .collect::<Result<_, _>>()?;
        Ok(Cdt {
            residual: h.clone(),
            strategy: Some(s),
            children,
        })
    }
}

/// All complete CDTs of the family rooted at the decomposed graph, indexed
/// `0..len()`. A complete tree stops only at empty residuals.
pub struct CdtFamily<'a> {
    g: &'a WeightedGraph,
    dec: &'a SparseDecomposition,
    counts: HashMap<EdgeSet, u128>,
    total: u128,
}

impl<'a> CdtFamily<'a> {
    pub fn new(g: &'a WeightedGraph, dec: &'a SparseDecomposition) -> Result<Self, ExactError> {
        let mut fam = Self {
            g,
            dec,
            counts: HashMap::new(),
            total: 0,
        };
        fam.total = fam.count(&dec.edges.clone())?;
        Ok(fam)
    }

    fn count(&mut self, h: &EdgeSet) -> Result<u128, ExactError> {
        if h.is_clear() {
            return Ok(1);
        }
        if let Some(&c) = self.counts.get(h) {
            return Ok(c);
        }
        let overflow = || ExactError::FamilyTooLarge { limit: u128::MAX };
        let mut total: u128 = 0;
        for s in family_actions(self.dec, h) {
            let out = outcomes(self.g, self.dec, h, s)?;
            let mut prod: u128 = 1;
            for (child, _) in &out.children {
                prod = prod
                    .checked_mul(self.count(child)?)
                    .ok_or_else(overflow)?;
            }
            total = total.checked_add(prod).ok_or_else(overflow)?;
        }
        self.counts.insert(h.clone(), total);
        Ok(total)
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    fn count_of(&self, h: &EdgeSet) -> u128 {
        if h.is_clear() {
            1
        } else {
            self.counts[h]
        }
    }

    /// Member number `index` in mixed-radix order: actions in ascending
    /// edge order, children's indices as digits, first child least
    /// significant.
    pub fn nth_member(&self, index: u128) -> Option<Cdt> {
        (index < self.total).then(|| self.decode(&self.dec.edges, index))
    }

    fn decode(&self, h: &EdgeSet, mut index: u128) -> Cdt {
        if h.is_clear() {
            return Cdt::leaf(h.clone());
        }
        for s in family_actions(self.dec, h) {
            let out = outcomes(self.g, self.dec, h, s).expect("action valid at counted residual");
            let block: u128 = out.children.iter().map(|(c, _)| self.count_of(c)).product();
            if index >= block {
                index -= block;
                continue;
            }
            let children = out
                .children
                .iter()
                .map(|(c, _)| {
                    let r = self.count_of(c);
                    let digit = index % r;
                    index /= r;
                    self.decode(c, digit)
                })
                .collect();
            return Cdt {
                residual: h.clone(),
                strategy: Some(s),
                children,
            };
        }
        unreachable!("index within counted range")
    }

    /// Number of members for each root strategy, in index order.
    pub fn root_blocks(&self) -> Vec<(CdtStrategy, u128)> {
        let h = &self.dec.edges;
        family_actions(self.dec, h)
            .into_iter()
            .map(|s| {
                let out = outcomes(self.g, self.dec, h, s).expect("valid root action");
                (s, out.children.iter().map(|(c, _)| self.count_of(c)).product())
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Cdt> + '_ {
        (0..self.total).map(|i| self.decode(&self.dec.edges, i))
    }
}

/// Number of complete CDTs in the family.
pub fn family_size(g: &WeightedGraph, dec: &SparseDecomposition) -> Result<u128, ExactError> {
    Ok(CdtFamily::new(g, dec)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::decompose::decompose;
    use crate::exact::decompose::tests::theta;
    use crate::exact::oracle::opt_value;
    use crate::exact::tree::evaluate_tree;

    fn k4(p: [f64; 6]) -> WeightedGraph {
        let mut edges = Vec::new();
        let mut i = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b, p[i]));
                i += 1;
            }
        }
        WeightedGraph::new(4, edges).unwrap()
    }

    #[test]
    fn k4_family_is_decision_trees() {
        let g = k4([0.3, 0.6, 0.5, 0.8, 0.2, 0.7]);
        let dec = decompose(&g.view(), 2).unwrap();
        let fam = CdtFamily::new(&g, &dec).unwrap();
        assert!(fam.len() > 0);
        let mut best = f64::NEG_INFINITY;
        for t in fam.iter() {
            assert!(t.height() <= 19);
            assert!(matches!(t.strategy, Some(CdtStrategy::Query(_))));
            let v = evaluate_cdt(&t, &g, &dec).unwrap();
            let tree = expand_cdt(&t, &g, &dec).unwrap();
            assert!((evaluate_tree(&tree, &g).unwrap() - v).abs() < 1e-12);
            best = best.max(v);
        }
        let want = opt_value(&g).unwrap();
        assert!((best - want).abs() < 1e-12);
        let mut solver = FamilySolver::new(dec.clone(), 1 << 20);
        assert!((solver.value(&g, &dec.edges).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn chorded_cycle_family_max_is_optimal() {
        let g = WeightedGraph::new(
            5,
            [(0, 1, 0.3), (1, 2, 0.8), (2, 3, 0.4), (3, 4, 0.6), (4, 0, 0.9), (0, 2, 0.5)],
        )
        .unwrap();
        let dec = decompose(&g.view(), 1).unwrap();
        assert_eq!(dec.v_ge3.len(), 2);
        let fam = CdtFamily::new(&g, &dec).unwrap();
        let mut best = f64::NEG_INFINITY;
        for t in fam.iter() {
            let v = evaluate_cdt(&t, &g, &dec).unwrap();
            let tree = expand_cdt(&t, &g, &dec).unwrap();
            assert!((evaluate_tree(&tree, &g).unwrap() - v).abs() < 1e-12);
            best = best.max(v);
        }
        let want = opt_value(&g).unwrap();
        assert!((best - want).abs() < 1e-12, "{best} vs {want}");
        let mut solver = FamilySolver::new(dec.clone(), 1 << 20);
        assert!((solver.value(&g, &dec.edges).unwrap() - best).abs() < 1e-12);
    }

    #[test]
    fn theta_family() {
        let g = theta(0.5);
        let dec = decompose(&g.view(), 1).unwrap();
        let fam = CdtFamily::new(&g, &dec).unwrap();
        let blocks = fam.root_blocks();
        assert_eq!(blocks.len(), 7);
        assert_eq!(blocks.iter().map(|b| b.1).sum::<u128>(), fam.len());
        let mut start = 0;
        for (s, n) in blocks {
            assert!(n > 0);
            let t = fam.nth_member(start).unwrap();
            assert_eq!(t.strategy, Some(s));
            assert!(t.height() <= 9 * dec.d as usize + 1);
            let v = evaluate_cdt(&t, &g, &dec).unwrap();
            let tree = expand_cdt(&t, &g, &dec).unwrap();
            assert!((evaluate_tree(&tree, &g).unwrap() - v).abs() < 1e-12);
            start += n;
        }
        assert!(fam.nth_member(start).is_none());
        let root = CdtStrategy::Sweep {
            path: 2,
            edge: EdgeId(5),
        };
        assert!(fam.root_blocks().iter().any(|b| b.0 == root));
        let want = opt_value(&g).unwrap();
        let mut solver = FamilySolver::new(dec.clone(), 1 << 20);
        let cdt = solver.best_cdt(&g, &dec.edges).unwrap();
        assert!((evaluate_cdt(&cdt, &g, &dec).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn sweep_outcomes_sum_to_one() {
        let g = theta(0.35);
        let dec = decompose(&g.view(), 1).unwrap();
        let out = outcomes(&g, &dec, &dec.edges, CdtStrategy::Sweep {
            path: 2,
            edge: EdgeId(5),
        })
        .unwrap();
        let total: f64 = out.children.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // A one-edge path has its head matched iff its tail is.
        assert_eq!(out.children.len(), 2);
        assert!((out.gain - 0.35).abs() < 1e-15);
    }

    #[test]
    fn invalid_cdts() {
        let g = theta(0.5);
        let dec = decompose(&g.view(), 1).unwrap();
        let bad = Cdt {
            residual: dec.edges.clone(),
            strategy: Some(CdtStrategy::Query(EdgeId(5))),
            children: Vec::new(),
        };
        assert!(matches!(evaluate_cdt(&bad, &g, &dec), Err(ExactError::InvalidCdt(_))));
        let missing = Cdt {
            residual: dec.edges.clone(),
            strategy: Some(CdtStrategy::Query(EdgeId(0))),
            children: Vec::new(),
        };
        assert!(evaluate_cdt(&missing, &g, &dec).is_err());
    }
}
