//! Optimal strategy for a sparse graph too large for brute force.
//!
//! ```text
//! cargo run --release --example sparse_solver -- [cycle length] [seed]
//! ```

use rand::Rng;

use query_commit::estimator::estimate_strategy_value;
use query_commit::exact::{opt_value, solve_sparse};
use query_commit::seed::rng_from_seed;
use query_commit::WeightedGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let len = args.first().copied().unwrap_or(10) as usize;
    let mut rng = rng_from_seed(args.get(1).copied().unwrap_or(1));

    // A cycle with a chord, and a two-edge path hanging off every cycle node.
    let mut edges = Vec::new();
    for i in 0..len {
        edges.push((i, (i + 1) % len, rng.random_range(0.1..1.0)));
        let a = len + 2 * i;
        edges.push((i, a, rng.random_range(0.1..1.0)));
        edges.push((a, a + 1, rng.random_range(0.1..1.0)));
    }
    edges.push((0, len / 2, 0.5));
    let n = 3 * len;
    let g = WeightedGraph::new(n, edges)?;
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());

    let (s, v) = solve_sparse(&g, 1)?;
    println!("sparse optimum {v:.6}");
    if g.edge_count() <= 18 {
        println!("brute force    {:.6}", opt_value(&g)?);
    }
    let est = estimate_strategy_value(&g, &s, 20_000, 1)?;
    println!("simulated      {:.4} +- {:.4}", est.mean, est.half_width);
    Ok(())
}
