//! Runs the eight heuristics and `E[μ]` on generated kidney-exchange
//! instances and prints the two-decimal table.
//!
//! ```text
//! cargo run --release --example kidney_table -- [instances] [n] [samples] [seed]
//! ```

use query_commit::experiment::{run_generated_table, ExperimentPlan, SamplingPlan};
use query_commit::kidney::GeneratorConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let arg = |i: usize, d: u64| args.get(i).copied().unwrap_or(d);
    let (count, n, samples, seed) = (arg(0, 3), arg(1, 50), arg(2, 2_000), arg(3, 1));
    let plan = ExperimentPlan {
        sampling: SamplingPlan::Samples(samples),
        ..ExperimentPlan::table(seed)
    };
    let table = run_generated_table(&plan, count as usize, n as usize, &GeneratorConfig::default())?;
    print!("{}", table.to_csv());
    Ok(())
}
