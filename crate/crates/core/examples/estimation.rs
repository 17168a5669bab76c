//! Confidence intervals for a strategy and for `E[μ]`, sample-size
//! planning, and a running-mean trace.

use std::io;

use query_commit::estimator::{
    bernstein_sample_size, convergence_trace, estimate_crn, hoeffding_sample_size,
    write_trace_csv, DEFAULT_DELTA,
};
use query_commit::experiment::campaign_instance;
use query_commit::kidney::GeneratorConfig;
use query_commit::simulator::StrategyKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = campaign_instance(1, 0, 40, &GeneratorConfig::default());
    let n = g.active_node_count();
    println!(
        "half-width 0.5 at 95%: Hoeffding k = {}, Bernstein k = {}",
        hoeffding_sample_size(n, 0.5, DEFAULT_DELTA)?,
        bernstein_sample_size(n, 0.5, DEFAULT_DELTA)?
    );

    let strategies = vec![StrategyKind::MinAvgDeg.build(&g)?, StrategyKind::MaxP.build(&g)?];
    let est = estimate_crn(&g, &strategies, 5_000, 9, DEFAULT_DELTA)?;
    for r in est.strategies.iter().chain([&est.e_mu]) {
        let (lo, hi) = r.interval();
        println!("{:<10} {:.3} in [{lo:.3}, {hi:.3}] ({})", r.label, r.mean, r.bound_family);
    }

    let trace = convergence_trace(&est.columns[0], 1000);
    write_trace_csv(io::stdout().lock(), "minAvgDeg", &trace, true)?;
    Ok(())
}
