//! Runs every catalog strategy on one realization, then computes each
//! strategy's exact expected matching size.

use query_commit::seed::rng_from_seed;
use query_commit::simulator::{run, strategy_value, HEURISTICS};
use query_commit::{sample_scenario, WeightedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = WeightedGraph::new(
        6,
        [
            (0, 1, 0.3),
            (1, 2, 0.8),
            (2, 3, 0.6),
            (3, 4, 0.35),
            (4, 5, 0.9),
            (5, 0, 0.5),
            (1, 4, 0.7),
        ],
    )?;
    let sigma = sample_scenario(&g, &mut rng_from_seed(3));
    println!("realization: {:?}", sigma.edges().collect::<Vec<_>>());
    for k in HEURISTICS {
        let mut s = k.build(&g)?;
        let r = run(&g, s.as_mut(), &sigma)?;
        let queries: Vec<String> = r
            .history
            .entries()
            .iter()
            .map(|(e, ok)| format!("{e}{}", if *ok { "+" } else { "-" }))
            .collect();
        let exact = strategy_value(&g, k.build(&g)?.as_ref())?;
        println!("{:<10} |M| = {}  E = {exact:.4}  queries {}", k.name(), r.size(), queries.join(" "));
    }
    Ok(())
}
