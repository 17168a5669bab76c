//! Strategies for complete bipartite graphs and for kidney instances split
//! by blood type.

use query_commit::experiment::campaign_instance;
use query_commit::kidney::GeneratorConfig;
use query_commit::simulator::{bipartite_sequential, blood_type_decomposition, StrategyKind};
use query_commit::estimator::estimate_strategy_value;
use query_commit::{NodeId, WeightedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = 8;
    let p = 0.4;
    let edges: Vec<_> = (0..k).flat_map(|i| (0..k).map(move |j| (i, k + j, p))).collect();
    let g = WeightedGraph::new(2 * k, edges)?;
    let u: Vec<NodeId> = (0..k).map(NodeId).collect();
    let s = bipartite_sequential(&g, &u)?;
    let est = estimate_strategy_value(&g, &s, 20_000, 1)?;
    let q: f64 = 1.0 - p;
    let bound = (1.0 - q.powi(4) - 0.5) * k as f64;
    println!("K_{k},{k} at p={p}: {:.3} (bound with eps=1/2: {bound:.3})", est.mean);

    let g = campaign_instance(4, 0, 100, &GeneratorConfig::default());
    let blood = blood_type_decomposition(&g)?;
    let by_type = estimate_strategy_value(&g, &blood, 2_000, 2)?;
    let min_avg = estimate_strategy_value(&g, StrategyKind::MinAvgDeg.build(&g)?.as_ref(), 2_000, 2)?;
    println!("kidney n=100: bloodDecomp {:.2}, minAvgDeg {:.2}", by_type.mean, min_avg.mean);
    Ok(())
}
