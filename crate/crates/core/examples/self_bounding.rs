//! Checks the self-bounding property of the matching number over all edge
//! subsets of a small graph.

use query_commit::estimator::{subset_matching_numbers, verify_self_bounding};
use query_commit::WeightedGraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = WeightedGraph::new(
        6,
        [(0, 1, 0.5), (1, 2, 0.5), (2, 0, 0.5), (2, 3, 0.5), (3, 4, 0.5), (4, 5, 0.5), (5, 3, 0.5)],
    )?;
    let mu = subset_matching_numbers(&g)?;
    let hist = mu.iter().fold([0usize; 4], |mut h, &x| {
        h[x as usize] += 1;
        h
    });
    println!("subsets by matching number: {hist:?}");
    println!("self-bounding: {}", verify_self_bounding(&g)?);
    Ok(())
}
