//! Exhaustive check that the matching number, as a function of the edge
//! indicator vector, is self-bounding.

use crate::error::EstimatorError;
use crate::graph::WeightedGraph;

pub const SELF_BOUNDING_EDGE_CAP: usize = 14;

/// Matching number of every edge subset, by the recursion
/// `μ(x) = max(μ(x - j), 1 + μ(x - N(j)))` on the lowest edge `j` of `x`.
pub fn subset_matching_numbers(g: &WeightedGraph) -> Result<Vec<u8>, EstimatorError> {
    let m = g.edge_count();
    if m > SELF_BOUNDING_EDGE_CAP {
        return Err(EstimatorError::TooManyEdges {
            edges: m,
            cap: SELF_BOUNDING_EDGE_CAP,
        });
    }
    let nbhd: Vec<u32> = g
        .edges()
        .map(|(_, e)| {
            let mut mask = 0u32;
            for node in [e.u, e.v] {
                for &(_, f) in g.incident(node) {
                    mask |= 1 << f.0;
                }
            }
            mask
        })
        .collect();
    let mut mu = vec![0u8; 1 << m];
    for x in 1usize..(1 << m) {
        let j = x.trailing_zeros() as usize;
        let without = mu[x & !(1 << j)];
        let with = 1 + mu[x & !(nbhd[j] as usize)];
        mu[x] = without.max(with);
    }
    Ok(mu)
}

/// Checks `0 <= μ(x) - μ(x - j) <= 1` for every subset `x` and edge `j`,
/// and `Σ_j [μ(x) - μ(x - j)] <= μ(x)`.
pub fn verify_self_bounding(g: &WeightedGraph) -> Result<bool, EstimatorError> {
    let mu = subset_matching_numbers(g)?;
    let m = g.edge_count();
    for x in 0..mu.len() {
        let mut total = 0i32;
        for j in 0..m {
            let diff = mu[x] as i32 - mu[x & !(1 << j)] as i32;
            if !(0..=1).contains(&diff) {
                return Ok(false);
            }
            total += diff;
        }
        if total > mu[x] as i32 {
            return Ok(false);
        }
    }
    Ok(true)
}
