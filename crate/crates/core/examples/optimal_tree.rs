//! Brute-force optimum of a small graph and its decision tree.

use query_commit::exact::{evaluate_tree, opt_strategy, opt_value};
use query_commit::WeightedGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = WeightedGraph::new(4, [(0, 1, 0.5), (1, 2, 0.9), (2, 3, 0.5), (0, 2, 0.2)])?;
    let v = opt_value(&g)?;
    let t = opt_strategy(&g)?;
    println!("OPT = {v:.12}, tree size {}, height {}", t.size(), t.height());
    assert!((evaluate_tree(&t, &g)? - v).abs() < 1e-12);
    print!("{}", t.render(&g));
    Ok(())
}
