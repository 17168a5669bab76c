//! Generates a kidney-exchange instance and summarizes it by blood type.
//!
//! ```text
//! cargo run --example kidney_instance -- [n] [seed] [config]
//! ```

use query_commit::kidney::{generate_instance, incompatible_type_law, AboType, GeneratorConfig};
use query_commit::seed::rng_from_seed;
use query_commit::AboPair;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map(|a| a.parse()).transpose()?.unwrap_or(100);
    let seed = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(1);
    let cfg = match args.get(2) {
        Some(path) => GeneratorConfig::load(path)?,
        None => GeneratorConfig::default(),
    };
    println!("config {}", cfg.hash());

    let g = generate_instance(n, &cfg, &mut rng_from_seed(seed));
    let min_p = g.edges().map(|(_, e)| e.p).fold(1.0, f64::min);
    println!("{} pairs, {} possible swaps, smallest p = {min_p:.4}", n, g.edge_count());

    let law = incompatible_type_law(&cfg);
    let labels = g.labels().unwrap_or_default();
    println!("type   count  expected");
    for p in AboType::ALL {
        for d in AboType::ALL {
            let t = AboPair::new(p, d);
            let count = labels.iter().filter(|&&l| l == t).count();
            println!("{:<6} {count:>5}  {:>8.2}", t.to_string(), law[t.index()] * n as f64);
        }
    }
    Ok(())
}
