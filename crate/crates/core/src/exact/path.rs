//! The path sweep `S(H, e)` and the dynamic program for its matching
//! statistics.

use crate::error::ExactError;
use crate::graph::{EdgeId, ResidualView};
use crate::simulator::FixedOrder;

use super::decompose::PathComponent;

/// Statistics of the matching `M` produced by a path sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathDpResult {
    pub expected_size: f64,
    /// `Pr(u_1 ∈ M)`.
    pub pr_u1: f64,
    /// `Pr(u_{q+1} ∈ M)`.
    pub pr_uq1: f64,
    pub pr_both: f64,
    /// Joint law of (u_1 matched, u_{q+1} matched), indexed by
    /// `2 * head + tail`. Each entry is a product of the probabilities of
    /// the branches leading to it, so impossible outcomes are exactly 0.
    pub outcomes: [f64; 4],
}

/// Runs the dynamic program on raw probabilities `p[0..q]` with the sweep
/// starting at 1-based position `a`. A zero entry stands for an edge that
/// is absent from the residual graph.
pub fn path_dp_probs(p: &[f64], a: usize) -> PathDpResult {
    let q = p.len();
    assert!((1..=q).contains(&a), "sweep start {a} outside 1..={q}");
    let pj = |j: usize| p[j - 1];

    // down_e[j], down_p[j]: expected size and Pr(u_1 matched) when sweeping
    // e_j, e_{j-1}, ..., e_1 on a fresh prefix. Index 0 is the empty prefix.
    let mut down_e = vec![0.0; q + 1];
    let mut down_p = vec![0.0; q + 1];
    for j in 1..=q {
        let back2 = |v: &[f64]| if j >= 2 { v[j - 2] } else { 0.0 };
        down_e[j] = pj(j) * (1.0 + back2(&down_e)) + (1.0 - pj(j)) * down_e[j - 1];
        down_p[j] = if j == 1 {
            pj(1)
        } else {
            pj(j) * back2(&down_p) + (1.0 - pj(j)) * down_p[j - 1]
        };
    }
    // up_e[j], up_p[j]: the same for e_j, ..., e_q and u_{q+1}. Index q + 1
    // is the empty suffix.
    let mut up_e = vec![0.0; q + 2];
    let mut up_p = vec![0.0; q + 2];
    for j in (1..=q).rev() {
        let fwd2 = |v: &[f64]| if j + 2 <= q { v[j + 2] } else { 0.0 };
        up_e[j] = pj(j) * (1.0 + fwd2(&up_e)) + (1.0 - pj(j)) * up_e[j + 1];
        up_p[j] = if j == q {
            pj(q)
        } else {
            pj(j) * fwd2(&up_p) + (1.0 - pj(j)) * up_p[j + 1]
        };
    }
    let down = |v: &[f64], k: isize| if k >= 1 { v[k as usize] } else { 0.0 };
    let up = |v: &[f64], k: usize| if k <= q { v[k] } else { 0.0 };

    let pa = pj(a);
    let ai = a as isize;
    let expected_size = pa * (1.0 + down(&down_e, ai - 2) + up(&up_e, a + 2))
        + (1.0 - pa) * (down(&down_e, ai - 1) + up(&up_e, a + 1));

    // Head/tail matched, conditioned on e_a existing (s) or not (f).
    let (ds, df) = if a == 1 {
        (1.0, 0.0)
    } else {
        (down(&down_p, ai - 2), down(&down_p, ai - 1))
    };
    let (us, uf) = if a == q {
        (1.0, 0.0)
    } else {
        (up(&up_p, a + 2), up(&up_p, a + 1))
    };
    let joint = |h: bool, t: bool| {
        let pick = |x: f64, on: bool| if on { x } else { 1.0 - x };
        pa * pick(ds, h) * pick(us, t) + (1.0 - pa) * pick(df, h) * pick(uf, t)
    };
    let outcomes = [
        joint(false, false),
        joint(false, true),
        joint(true, false),
        joint(true, true),
    ];
    PathDpResult {
        expected_size,
        pr_u1: pa * ds + (1.0 - pa) * df,
        pr_uq1: pa * us + (1.0 - pa) * uf,
        pr_both: outcomes[3],
        outcomes,
    }
}

fn start_position(
    h: &ResidualView<'_>,
    path: &PathComponent,
    e: EdgeId,
) -> Result<usize, ExactError> {
    match path.position(e) {
        Some(a) if h.is_alive(e) => Ok(a),
        _ => Err(ExactError::NotOnPath {
            edge: e,
            path: path.head().0,
        }),
    }
}

/// DP statistics of `S(h, e)` for `e` on `path`. Path edges missing from
/// `h` are never queried.
pub fn path_dp(
    h: &ResidualView<'_>,
    path: &PathComponent,
    e: EdgeId,
) -> Result<PathDpResult, ExactError> {
    let a = start_position(h, path, e)?;
    let p: Vec<f64> = path
        .edges
        .iter()
        .map(|&f| if h.is_alive(f) { h.graph().prob(f) } else { 0.0 })
        .collect();
    Ok(path_dp_probs(&p, a))
}

/// Query order of `S(H, e_a)`: `e_a, e_{a-1}, ..., e_1, e_{a+1}, ..., e_q`.
pub fn sweep_order(path: &PathComponent, a: usize) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = path.edges[..a].iter().rev().copied().collect();
    order.extend_from_slice(&path.edges[a..]);
    order
}

/// `S(h, e)` as a runnable strategy. Edges that are dead when their turn
/// comes are skipped.
pub fn path_sweep_strategy(
    h: &ResidualView<'_>,
    path: &PathComponent,
    e: EdgeId,
) -> Result<FixedOrder, ExactError> {
    let a = start_position(h, path, e)?;
    Ok(FixedOrder::new(format!("sweep({e})"), sweep_order(path, a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NodeId, Scenario, WeightedGraph};
    use crate::simulator::run;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path_graph(p: &[f64]) -> (WeightedGraph, PathComponent) {
        let q = p.len();
        let g = WeightedGraph::new(q + 1, p.iter().enumerate().map(|(i, &pi)| (i, i + 1, pi)))
            .unwrap();
        let comp = PathComponent {
            nodes: (0..=q).map(NodeId).collect(),
            edges: (0..q).map(EdgeId).collect(),
            head_boundary: Vec::new(),
            tail_boundary: Vec::new(),
        };
        (g, comp)
    }

    /// Outcome statistics by running the sweep on every scenario.
    fn brute(g: &WeightedGraph, comp: &PathComponent, a: usize) -> [f64; 4] {
        let view = g.view();
        let head = comp.head();
        let tail = comp.tail();
        let mut out = [0.0; 4];
        for (sigma, pr) in Scenario::enumerate(g) {
            let mut s = path_sweep_strategy(&view, comp, comp.edges[a - 1]).unwrap();
            let r = run(g, &mut s, &sigma).unwrap();
            let h = r.matching.covers(g, head);
            let t = r.matching.covers(g, tail);
            out[0] += pr * r.size() as f64;
            out[1] += pr * h as u8 as f64;
            out[2] += pr * t as u8 as f64;
            out[3] += pr * (h && t) as u8 as f64;
        }
        out
    }

    #[test]
    fn single_edge() {
        let r = path_dp_probs(&[0.3], 1);
        for v in [r.expected_size, r.pr_u1, r.pr_uq1, r.pr_both] {
            assert!((v - 0.3).abs() < 1e-15);
        }
        assert_eq!(r.outcomes[1], 0.0);
        assert_eq!(r.outcomes[2], 0.0);
    }

    #[test]
    fn sweep_orders() {
        let (_, comp) = path_graph(&[0.5; 3]);
        assert_eq!(sweep_order(&comp, 2), vec![EdgeId(1), EdgeId(0), EdgeId(2)]);
        let (_, one) = path_graph(&[0.5]);
        assert_eq!(sweep_order(&one, 1), vec![EdgeId(0)]);
    }

    #[test]
    fn two_edge_path_first_edge() {
        let (g, comp) = path_graph(&[0.5, 0.5]);
        let r = path_dp(&g.view(), &comp, EdgeId(0)).unwrap();
        let b = brute(&g, &comp, 1);
        assert!((r.expected_size - b[0]).abs() < 1e-12);
        assert!((r.pr_u1 - b[1]).abs() < 1e-12);
        assert!((r.pr_uq1 - b[2]).abs() < 1e-12);
        assert!((r.pr_both - b[3]).abs() < 1e-12);
        assert!((r.expected_size - 0.75).abs() < 1e-12);
    }

    #[test]
    fn five_edge_path_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let p: Vec<f64> = (0..5).map(|_| rng.random_range(0.01..1.0)).collect();
            let (g, comp) = path_graph(&p);
            for a in 1..=5 {
                let r = path_dp(&g.view(), &comp, EdgeId(a - 1)).unwrap();
                let b = brute(&g, &comp, a);
                assert!((r.expected_size - b[0]).abs() < 1e-12);
                assert!((r.pr_u1 - b[1]).abs() < 1e-12);
                assert!((r.pr_uq1 - b[2]).abs() < 1e-12);
                assert!((r.pr_both - b[3]).abs() < 1e-12);
                let total: f64 = r.outcomes.iter().sum();
                assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn missing_edges_are_skipped() {
        let (g, comp) = path_graph(&[0.4, 0.7, 0.2, 0.9]);
        let h = g.view().remove_edge(EdgeId(1)).unwrap();
        let r = path_dp(&h, &comp, EdgeId(2)).unwrap();
        // Two independent pieces: e_1 alone and e_3-e_4 swept from e_3.
        let want = 0.4 + (0.2 + 0.8 * 0.9);
        assert!((r.expected_size - want).abs() < 1e-12);
        assert!(matches!(
            path_dp(&h, &comp, EdgeId(1)),
            Err(ExactError::NotOnPath { .. })
        ));
    }

    #[test]
    fn residuals_have_no_path_edges() {
        let (g, comp) = path_graph(&[0.3, 0.6, 0.5, 0.8]);
        for a in 1..=4 {
            for (sigma, _) in Scenario::enumerate(&g) {
                let mut s = path_sweep_strategy(&g.view(), &comp, comp.edges[a - 1]).unwrap();
                let r = run(&g, &mut s, &sigma).unwrap();
                let mut v = g.view();
                for &(e, ok) in r.history.entries() {
                    if ok {
                        v.remove_neighborhood_mut(e).unwrap();
                    } else {
                        v.remove_edge_mut(e).unwrap();
                    }
                }
                assert!(v.is_empty());
            }
        }
    }
}
