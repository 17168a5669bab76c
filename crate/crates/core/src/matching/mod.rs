//! Matching algorithms on general graphs.

mod cardinality;
mod weighted;

pub use cardinality::{
    matching_number, max_cardinality_matching, scenario_matching_number, CardinalityMatcher,
};
pub use weighted::{max_weight_matching, WeightedMatcher};

use crate::graph::{Matching, Scenario, WeightedGraph};

/// True iff no edge of `s` has both endpoints uncovered by `m`.
pub fn is_maximal_in(m: &Matching, s: &Scenario, g: &WeightedGraph) -> bool {
    let mut covered = vec![false; g.node_count()];
    for &e in m.edges() {
        let edge = g.edge(e);
        covered[edge.u.0] = true;
        covered[edge.v.0] = true;
    }
    s.edges().all(|e| {
        let edge = g.edge(e);
        covered[edge.u.0] || covered[edge.v.0]
    })
}
