//! Builds a small instance, walks through residual-graph operations and
//! round-trips it through the text format.

use query_commit::format::{parse_graph, write_graph};
use query_commit::seed::rng_from_seed;
use query_commit::{sample_scenario, EdgeId, WeightedGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A 4-cycle with a tail.
    let g = WeightedGraph::new(
        5,
        [(0, 1, 0.9), (1, 2, 0.4), (2, 3, 0.7), (3, 0, 0.5), (3, 4, 0.2)],
    )?;
    let r = g.view();
    println!("excess e - v = {}", r.sparsity_excess());
    println!("pendant edges: {:?}", r.pendant_edges());

    // Success on edge 2-3 removes everything touching nodes 2 and 3.
    let yes = r.remove_neighborhood(EdgeId(2))?;
    let no = r.remove_edge(EdgeId(2))?;
    println!("after success: {:?}", yes.edges().collect::<Vec<_>>());
    println!("after failure: {:?}", no.edges().collect::<Vec<_>>());
    println!("components after success: {}", yes.component_sets().len());

    let sigma = sample_scenario(&g, &mut rng_from_seed(7));
    println!("one realization: {:?}", sigma.edges().collect::<Vec<_>>());

    let text = write_graph(&g);
    print!("{text}");
    assert_eq!(write_graph(&parse_graph(&text)?), text);
    Ok(())
}
