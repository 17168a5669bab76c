//! Optimal strategies for graphs whose components have sparsity excess at
//! most `d`: peel pendant edges, split into components, and pick the best
//! member of the path-sweep family on every pendant-free component.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use crate::error::ExactError;
use crate::graph::{EdgeId, EdgeSet, ResidualView, WeightedGraph};
use crate::simulator::{QueryHistory, Strategy};

use super::decompose::decompose;
use super::family::{CdtStrategy, FamilySolver};
use super::path::sweep_order;

pub const DEFAULT_MEMO_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug)]
enum TopDecision {
    Split(Vec<EdgeSet>),
    Pendant(EdgeId),
    CycleFirst(EdgeId),
    Family(usize),
}

#[derive(Debug)]
struct Solver {
    g: Arc<WeightedGraph>,
    d: i64,
    top: HashMap<EdgeSet, (f64, TopDecision)>,
    families: Vec<FamilySolver>,
    limit: usize,
}

impl Solver {
    fn remember(&mut self, s: &EdgeSet, v: f64, dec: TopDecision) -> Result<f64, ExactError> {
        if self.top.len() >= self.limit {
            return Err(ExactError::MemoOverflow { limit: self.limit });
        }
        self.top.insert(s.clone(), (v, dec));
        Ok(v)
    }

    /// Value of the residual edge set `s` (any shape).
    fn value(&mut self, s: &EdgeSet) -> Result<f64, ExactError> {
        if s.is_clear() {
            return Ok(0.0);
        }
        if let Some((v, _)) = self.top.get(s) {
            return Ok(*v);
        }
        let g = Arc::clone(&self.g);
        let view = ResidualView::from_set(&g, s);
        let comps = view.component_sets();
        if comps.len() > 1 {
            let mut v = 0.0;
            for c in &comps {
                v += self.value(c)?;
            }
            return self.remember(s, v, TopDecision::Split(comps));
        }
        if let Some(e) = view.first_pendant() {
            let v = self.query_value(&view, e)?;
            return self.remember(s, v, TopDecision::Pendant(e));
        }
        let dec = decompose(&view, self.d)?;
        if dec.is_cycle {
            let mut best = (f64::NEG_INFINITY, EdgeId(0));
            for e in view.edges() {
                let v = self.query_value(&view, e)?;
                if v > best.0 {
                    best = (v, e);
                }
            }
            return self.remember(s, best.0, TopDecision::CycleFirst(best.1));
        }
        let mut fam = FamilySolver::new(dec, self.limit);
        let v = fam.value(&g, s)?;
        self.families.push(fam);
        let id = self.families.len() - 1;
        self.remember(s, v, TopDecision::Family(id))
    }

    fn query_value(&mut self, view: &ResidualView<'_>, e: EdgeId) -> Result<f64, ExactError> {
        let p = view.graph().prob(e);
        let yes = view.remove_neighborhood(e).expect("alive edge");
        let mut v = p * (1.0 + self.value(yes.alive_set())?);
        if p < 1.0 {
            let no = view.remove_edge(e).expect("alive edge");
            v += (1.0 - p) * self.value(no.alive_set())?;
        }
        Ok(v)
    }

    fn decision(&mut self, s: &EdgeSet) -> Result<TopDecision, ExactError> {
        self.value(s)?;
        Ok(self.top[s].1.clone())
    }
}

#[derive(Clone, Debug)]
enum Job {
    Top(EdgeSet),
    Family(usize, EdgeSet),
}

/// Online form of the optimal strategy computed by [`solve_sparse`]. Clones
/// share the solver and its memo tables.
///
/// Residual graphs the solver has not seen (for example after queries made
/// by another strategy) are solved on demand.
///
/// # Panics
///
/// `next_query` panics if such an on-demand solve fails, which can only
/// happen when the memo limit is exceeded.
#[derive(Clone, Debug)]
pub struct SparseStrategy {
    solver: Arc<Mutex<Solver>>,
    jobs: Vec<Job>,
    pending: VecDeque<EdgeId>,
    value: f64,
}

impl SparseStrategy {
    /// Exact expected matching size from the full graph.
    pub fn value(&self) -> f64 {
        self.value
    }
}

impl Strategy for SparseStrategy {
    fn name(&self) -> String {
        "sparseOpt".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, _: &QueryHistory) -> Option<EdgeId> {
        while let Some(e) = self.pending.pop_front() {
            if r.is_alive(e) {
                return Some(e);
            }
        }
        let mut solver = self.solver.lock().expect("solver lock");
        while let Some(job) = self.jobs.pop() {
            match job {
                Job::Top(mut h) => {
                    h.intersect_with(r.alive_set());
                    if h.is_clear() {
                        continue;
                    }
                    match solver.decision(&h).expect("sparse solver failed") {
                        TopDecision::Split(comps) => {
                            self.jobs.extend(comps.into_iter().rev().map(Job::Top));
                        }
                        TopDecision::Pendant(e) | TopDecision::CycleFirst(e) => {
                            self.jobs.push(Job::Top(h));
                            return Some(e);
                        }
                        TopDecision::Family(id) => self.jobs.push(Job::Family(id, h)),
                    }
                }
                Job::Family(id, mut h) => {
                    h.intersect_with(r.alive_set());
                    let g = Arc::clone(&solver.g);
                    let fam = &mut solver.families[id];
                    let Some(action) = fam.decision(&g, &h).expect("sparse solver failed") else {
                        continue;
                    };
                    self.jobs.push(Job::Family(id, h));
                    match action {
                        CdtStrategy::Query(e) => return Some(e),
                        CdtStrategy::Sweep { path, edge } => {
                            let comp = &fam.decomposition().paths[path];
                            let a = comp.position(edge).expect("edge on its path");
                            self.pending.extend(sweep_order(comp, a));
                            // The first sweep edge is alive by construction.
                            return self.pending.pop_front();
                        }
                    }
                }
            }
        }
        None
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Computes an optimal strategy and its value for `g`, whose components
/// must each have sparsity excess at most `d`.
pub fn solve_sparse(g: &WeightedGraph, d: i64) -> Result<(SparseStrategy, f64), ExactError> {
    solve_sparse_with(g, d, DEFAULT_MEMO_LIMIT)
}

pub fn solve_sparse_with(
    g: &WeightedGraph,
    d: i64,
    memo_limit: usize,
) -> Result<(SparseStrategy, f64), ExactError> {
    for comp in g.view().component_sets() {
        let excess = ResidualView::from_set(g, &comp).sparsity_excess();
        if excess > d {
            return Err(ExactError::TooDense { excess, d });
        }
    }
    let root = g.full_edge_set();
    let mut solver = Solver {
        g: Arc::new(g.clone()),
        d,
        top: HashMap::new(),
        families: Vec::new(),
        limit: memo_limit,
    };
    let value = solver.value(&root)?;
    let strategy = SparseStrategy {
        solver: Arc::new(Mutex::new(solver)),
        jobs: vec![Job::Top(root)],
        pending: VecDeque::new(),
        value,
    };
    Ok((strategy, value))
}
