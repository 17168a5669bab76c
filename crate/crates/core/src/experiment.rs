//! Table-style campaigns: every strategy plus `E[μ]` on every instance, on
//! shared scenarios.
//!
//! Seeding: instance `i` is generated from `sub_seed(seed, [0, i])` and its
//! scenarios from `sub_seed(seed, [1, i])`, sample `j` using
//! `sub_seed(sub_seed(seed, [1, i]), [j])`. The same stream serves every
//! strategy column (common random numbers).

use std::fmt::Write as _;

use crate::error::EstimatorError;
use crate::estimator::{estimate_crn, hoeffding_sample_size, EstimateReport, DEFAULT_DELTA, E_MU_LABEL};
use crate::graph::WeightedGraph;
use crate::kidney::{generate_instance, GeneratorConfig};
use crate::seed::{rng_for, sub_seed};
use crate::simulator::{StrategyKind, HEURISTICS};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SamplingPlan {
    Samples(u64),
    /// Hoeffding half-width target; the sample count follows from the
    /// instance's node count.
    TargetHalfWidth(f64),
}

impl SamplingPlan {
    pub fn samples_for(&self, n: usize, delta: f64) -> Result<u64, EstimatorError> {
        match *self {
            SamplingPlan::Samples(0) => Err(EstimatorError::NoSamples),
            SamplingPlan::Samples(k) => Ok(k),
            SamplingPlan::TargetHalfWidth(t) => hoeffding_sample_size(n.max(1), t, delta),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub strategies: Vec<StrategyKind>,
    pub sampling: SamplingPlan,
    pub delta: f64,
    pub seed: u64,
}

impl ExperimentPlan {
    /// The eight heuristics, 38,000 samples, 95% confidence.
    pub fn table(seed: u64) -> Self {
        Self {
            strategies: HEURISTICS.to_vec(),
            sampling: SamplingPlan::Samples(38_000),
            delta: DEFAULT_DELTA,
            seed,
        }
    }

    pub fn columns(&self) -> Vec<String> {
        self.strategies
            .iter()
            .map(|s| s.name().to_string())
            .chain([E_MU_LABEL.to_string()])
            .collect()
    }
}

/// Generated instance `index` of a campaign.
pub fn campaign_instance(seed: u64, index: usize, n: usize, cfg: &GeneratorConfig) -> WeightedGraph {
    generate_instance(n, cfg, &mut rng_for(seed, &[0, index as u64]))
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub instance: String,
    /// Strategy cells in plan order, then `E[μ]`.
    pub cells: Vec<EstimateReport>,
}

impl TableRow {
    pub fn e_mu(&self) -> &EstimateReport {
        self.cells.last().expect("E[mu] cell")
    }

    pub fn strategies(&self) -> &[EstimateReport] {
        &self.cells[..self.cells.len() - 1]
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl Table {
    /// Column means over instances.
    pub fn mean_row(&self) -> Vec<f64> {
        let k = self.rows.len().max(1) as f64;
        (0..self.columns.len())
            .map(|c| self.rows.iter().map(|r| r.cells[c].mean).sum::<f64>() / k)
            .collect()
    }

    /// Instances as rows, columns as in the plan, a final `mean` row, two
    /// decimals.
    pub fn to_csv(&self) -> String {
        let mut out = format!("instance,{}\n", self.columns.join(","));
        for r in &self.rows {
            out.push_str(&r.instance);
            for c in &r.cells {
                write!(out, ",{:.2}", c.mean).unwrap();
            }
            out.push('\n');
        }
        out.push_str("mean");
        for m in self.mean_row() {
            write!(out, ",{m:.2}").unwrap();
        }
        out.push('\n');
        out
    }

    /// One line per cell at full precision, in the estimate CSV layout.
    pub fn to_full_csv(&self) -> String {
        let mut out = format!("{}\n", EstimateReport::CSV_HEADER);
        for r in &self.rows {
            for c in &r.cells {
                out.push_str(&c.csv_row(&r.instance));
                out.push('\n');
            }
        }
        out
    }
}

/// Runs `plan` on named instances. Instance `i` draws its scenarios from
/// `sub_seed(plan.seed, [1, i])`.
pub fn run_table(plan: &ExperimentPlan, instances: &[(String, WeightedGraph)]) -> Result<Table, EstimatorError> {
    let mut rows = Vec::with_capacity(instances.len());
    for (i, (name, g)) in instances.iter().enumerate() {
        let strategies = plan
            .strategies
            .iter()
            .map(|s| s.build(g))
            .collect::<Result<Vec<_>, _>>()?;
        let k = plan.sampling.samples_for(g.active_node_count(), plan.delta)?;
        let seed = sub_seed(plan.seed, &[1, i as u64]);
        let est = estimate_crn(g, &strategies, k, seed, plan.delta)?;
        let mut cells = est.strategies;
        cells.push(est.e_mu);
        rows.push(TableRow {
            instance: name.clone(),
            cells,
        });
    }
    Ok(Table {
        columns: plan.columns(),
        rows,
    })
}

/// Generates `count` instances with `n` pairs each and runs `plan` on them.
pub fn run_generated_table(
    plan: &ExperimentPlan,
    count: usize,
    n: usize,
    cfg: &GeneratorConfig,
) -> Result<Table, EstimatorError> {
    let instances: Vec<_> = (0..count)
        .map(|i| (i.to_string(), campaign_instance(plan.seed, i, n, cfg)))
        .collect();
    run_table(plan, &instances)
}
