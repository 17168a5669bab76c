//! Maximum-cardinality and maximum-weight matchings on a non-bipartite
//! graph.

use query_commit::matching::{matching_number, max_cardinality_matching, max_weight_matching};
use query_commit::WeightedGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two triangles joined by a bridge: the blossom case.
    let g = WeightedGraph::new(
        6,
        [
            (0, 1, 0.5),
            (1, 2, 0.5),
            (0, 2, 0.5),
            (2, 3, 0.9),
            (3, 4, 0.5),
            (4, 5, 0.5),
            (3, 5, 0.5),
        ],
    )?;
    let m = max_cardinality_matching(&g.view());
    println!("mu(G) = {} via {:?}", matching_number(&g), m.edges());

    // Weights 1 - p favour unlikely edges, as batchWSM and SWMq do.
    let w: Vec<f64> = g.edges().map(|(_, e)| 1.0 - e.p).collect();
    let mw = max_weight_matching(&g.view(), &w)?;
    println!("max weight {:.2} via {:?}", mw.weight(&w), mw.edges());
    Ok(())
}
