//! An instance on which the matching size of a fixed strategy takes only
//! two values, far apart.

use crate::error::EstimatorError;
use crate::graph::{EdgeId, ResidualView, WeightedGraph};
use crate::simulator::{QueryHistory, Strategy};

/// Strategy for [`adversarial_instance`]: query the uncertain middle edge;
/// on success take every other middle edge, on failure every outer edge.
#[derive(Clone, Debug)]
pub struct AdversarialStrategy {
    paths: usize,
    order: Vec<EdgeId>,
    pos: usize,
}

impl Strategy for AdversarialStrategy {
    fn name(&self) -> String {
        "twoValued".into()
    }

    fn next_query(&mut self, r: &ResidualView<'_>, h: &QueryHistory) -> Option<EdgeId> {
        let Some(&(_, first)) = h.entries().first() else {
            return Some(EdgeId(1));
        };
        if self.order.is_empty() {
            self.order = if first {
                (1..self.paths).map(|i| EdgeId(3 * i + 1)).collect()
            } else {
                (0..self.paths)
                    .flat_map(|i| [EdgeId(3 * i), EdgeId(3 * i + 2)])
                    .collect()
            };
        }
        while let Some(&e) = self.order.get(self.pos) {
            self.pos += 1;
            if r.is_alive(e) {
                return Some(e);
            }
        }
        None
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// `n/4` disjoint three-edge paths, all edges certain except the middle
/// edge of the first path (probability 1/2). Path `i` uses nodes
/// `4i..4i+3` and edges `3i` (outer), `3i+1` (middle), `3i+2` (outer).
pub fn adversarial_instance(n: usize) -> Result<(WeightedGraph, AdversarialStrategy), EstimatorError> {
    if n == 0 || n % 4 != 0 {
        return Err(EstimatorError::NotMultipleOfFour(n));
    }
    let paths = n / 4;
    let mut edges = Vec::with_capacity(3 * paths);
    for i in 0..paths {
        let b = 4 * i;
        let mid = if i == 0 { 0.5 } else { 1.0 };
        edges.extend([(b, b + 1, 1.0), (b + 1, b + 2, mid), (b + 2, b + 3, 1.0)]);
    }
    let g = WeightedGraph::new(n, edges).expect("valid construction");
    Ok((
        g,
        AdversarialStrategy {
            paths,
            order: Vec::new(),
            pos: 0,
        },
    ))
}

/// Exact law of the mean of `k` independent runs on the size-`n` instance:
/// `n/4 + (n/4) F / k` with `F ~ Bin(k, 1/2)`. Returns `(value, probability)`
/// in increasing order of value.
pub fn adversarial_mean_law(n: usize, k: u64) -> Vec<(f64, f64)> {
    let q = n as f64 / 4.0;
    let kf = k as f64;
    let mut log_c = 0.0f64;
    let base = -kf * std::f64::consts::LN_2;
    let mut out = Vec::with_capacity(k as usize + 1);
    for j in 0..=k {
        if j > 0 {
            log_c += ((k - j + 1) as f64).ln() - (j as f64).ln();
        }
        out.push((q + q * j as f64 / kf, (log_c + base).exp()));
    }
    out
}
