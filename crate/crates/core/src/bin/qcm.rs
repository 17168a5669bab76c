use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use query_commit::estimator::{
    bernstein_sample_size, convergence_trace, estimate_e_mu_with, sample_columns, write_trace_csv,
    BoundFamily, EstimateReport, DEFAULT_DELTA,
};
use query_commit::exact::{expand_strategy, opt_strategy, opt_value, solve_sparse};
use query_commit::experiment::{campaign_instance, run_table, ExperimentPlan, SamplingPlan};
use query_commit::format::{parse_graph, write_graph};
use query_commit::kidney::{generate_instance, GeneratorConfig};
use query_commit::seed::rng_from_seed;
use query_commit::simulator::{StrategyKind, HEURISTICS};
use query_commit::WeightedGraph;

/// Largest graph whose sparse-solver strategy is expanded for `--tree`.
const TREE_EDGE_CAP: usize = 20;

#[derive(Parser)]
#[command(name = "qcm", version, about = "Query-commit stochastic matching experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a kidney-exchange instance
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generator config file (defaults to the shipped parameters)
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate a strategy's expected matching size
    Estimate {
        /// Instance file (stdin if omitted)
        instance: Option<PathBuf>,
        #[arg(long)]
        strategy: String,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write running means every 100 samples to this CSV
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Estimate E[mu], the expected maximum matching size of a realization
    Emu {
        instance: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimal values
    Exact {
        #[command(subcommand)]
        cmd: ExactCommand,
    },
    /// Every strategy plus E[mu] on every instance, one row per instance
    Table {
        /// Instance files; without any, instances are generated
        instances: Vec<PathBuf>,
        /// Number of generated instances
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Pairs per generated instance
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated strategy names (defaults to the eight heuristics)
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Full-precision per-cell CSV
        #[arg(long)]
        full_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExactCommand {
    /// Brute-force optimum (small graphs only)
    Opt {
        instance: Option<PathBuf>,
        /// Print the optimal decision tree
        #[arg(long)]
        tree: bool,
    },
    /// Optimum for graphs whose components have sparsity excess at most d
    Sparse {
        instance: Option<PathBuf>,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        tree: bool,
    },
}

#[derive(Args)]
struct Sampling {
    /// Number of sampled scenarios
    #[arg(long, conflicts_with = "target_halfwidth")]
    samples: Option<u64>,
    /// Pick the sample count that reaches this half-width
    #[arg(long)]
    target_halfwidth: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
}

impl Sampling {
    fn plan(&self, default_samples: u64) -> SamplingPlan {
        match (self.samples, self.target_halfwidth) {
            (_, Some(t)) => SamplingPlan::TargetHalfWidth(t),
            (Some(k), None) => SamplingPlan::Samples(k),
            (None, None) => SamplingPlan::Samples(default_samples),
        }
    }
}

fn read_instance(path: Option<&Path>) -> Result<WeightedGraph> {
    let (name, text) = match path {
        Some(p) => (
            p.display().to_string(),
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        ),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            ("<stdin>".to_string(), s)
        }
    };
    parse_graph(&text).with_context(|| format!("{name}: malformed instance"))
}

fn load_config(path: Option<&Path>) -> Result<GeneratorConfig> {
    match path {
        Some(p) => GeneratorConfig::load(p).with_context(|| format!("{}: bad config", p.display())),
        None => Ok(GeneratorConfig::default()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn report_csv(r: &EstimateReport, instance: &str) -> String {
    format!("{}\n{}\n", EstimateReport::CSV_HEADER, r.csv_row(instance))
}

fn instance_name(path: Option<&Path>) -> String {
    path.and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".into())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Command::Gen { n, seed, config, out } => {
            let cfg = load_config(config.as_deref())?;
            let g = generate_instance(n, &cfg, &mut rng_from_seed(seed));
            let text = format!("# seed {seed}\n# config {}\n{}", cfg.hash(), write_graph(&g));
            emit(out.as_deref(), &text)
        }
        Command::Estimate { instance, strategy, sampling, seed, out, trace } => {
            let g = read_instance(instance.as_deref())?;
            let s = strategy.parse::<StrategyKind>()?.build(&g)?;
            let k = sampling.plan(38_000).samples_for(g.active_node_count(), sampling.delta)?;
            let col = sample_columns(&g, &[s], false, k, seed)?.remove(0);
            let r = EstimateReport::from_values(
                strategy,
                &col,
                g.active_node_count(),
                sampling.delta,
                BoundFamily::Hoeffding,
                seed,
            )?;
            if let Some(path) = trace {
                let mut f = io::BufWriter::new(fs::File::create(&path)?);
                write_trace_csv(&mut f, &r.label, &convergence_trace(&col, 100), true)?;
                f.flush()?;
            }
            emit(out.as_deref(), &report_csv(&r, &instance_name(instance.as_deref())))
        }
        Command::Emu { instance, sampling, seed, out } => {
            let g = read_instance(instance.as_deref())?;
            let k = match sampling.plan(38_000) {
                SamplingPlan::TargetHalfWidth(t) => {
                    bernstein_sample_size(g.active_node_count().max(1), t, sampling.delta)?
                }
                SamplingPlan::Samples(k) => k,
            };
            let r = estimate_e_mu_with(&g, k, seed, sampling.delta)?;
            emit(out.as_deref(), &report_csv(&r, &instance_name(instance.as_deref())))
        }
        Command::Exact { cmd: ExactCommand::Opt { instance, tree } } => {
            let g = read_instance(instance.as_deref())?;
            let v = opt_value(&g)?;
            println!("{v:.12}");
            if tree {
                print!("{}", opt_strategy(&g)?.render(&g));
            }
            Ok(())
        }
        Command::Exact { cmd: ExactCommand::Sparse { instance, d, tree } } => {
            let g = read_instance(instance.as_deref())?;
            let (s, v) = solve_sparse(&g, d)?;
            println!("{v:.12}");
            if tree {
                if g.edge_count() > TREE_EDGE_CAP {
                    bail!("--tree is limited to graphs with at most {TREE_EDGE_CAP} edges");
                }
                print!("{}", expand_strategy(&g, &s)?.render(&g));
            }
            Ok(())
        }
        Command::Table {
            instances,
            count,
            n,
            config,
            strategies,
            sampling,
            seed,
            out,
            full_out,
        } => {
            let kinds = if strategies.is_empty() {
                HEURISTICS.to_vec()
            } else {
                strategies
                    .iter()
                    .map(|s| s.parse::<StrategyKind>())
                    .collect::<Result<_, _>>()?
            };
            let plan = ExperimentPlan {
                strategies: kinds,
                sampling: sampling.plan(38_000),
                delta: sampling.delta,
                seed,
            };
            let named = if instances.is_empty() {
                let cfg = load_config(config.as_deref())?;
                eprintln!("config {}", cfg.hash());
                (0..count)
                    .map(|i| (i.to_string(), campaign_instance(seed, i, n, &cfg)))
                    .collect()
            } else {
                instances
                    .iter()
                    .map(|p| Ok((instance_name(Some(p)), read_instance(Some(p))?)))
                    .collect::<Result<Vec<_>>>()?
            };
            let table = run_table(&plan, &named)?;
            if let Some(p) = full_out {
                emit(Some(&p), &table.to_full_csv())?;
            }
            emit(out.as_deref(), &table.to_csv())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("QC_THREADS") {
        match v.parse::<usize>() {
            Ok(t) if t > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            _ => {
                eprintln!("error: QC_THREADS must be a positive integer, got `{v}`");
                return ExitCode::FAILURE;
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
