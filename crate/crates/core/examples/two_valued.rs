//! An instance whose strategy value takes only two values, and the exact
//! law of its sample mean.

use query_commit::estimator::{adversarial_instance, adversarial_mean_law, estimate_strategy_value};
use query_commit::simulator::strategy_value;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 64;
    let (g, s) = adversarial_instance(n)?;
    println!("exact value {}", strategy_value(&g, &s)?);
    let k = 16;
    let law = adversarial_mean_law(n, k);
    for (v, p) in law.iter().filter(|(_, p)| *p > 0.01) {
        println!("Pr(mean = {v:.2}) = {p:.4}");
    }
    let r = estimate_strategy_value(&g, &s, k, 5)?;
    println!("one estimate from {k} samples: {:.2} +- {:.2}", r.mean, r.half_width);
    Ok(())
}
