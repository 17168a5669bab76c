//! Monte-Carlo estimates of strategy values and of `E[μ]`.
//!
//! Sample `i` under seed `s` always uses the scenario drawn from
//! `sub_seed(s, [i])`. Every strategy and the `μ` column evaluated under the
//! same seed therefore see the same realizations (common random numbers),
//! and the result does not depend on the number of worker threads.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::EstimatorError;
use crate::graph::{sample_scenario, WeightedGraph};
use crate::matching::CardinalityMatcher;
use crate::seed::rng_for;
use crate::simulator::{run_size, Strategy};

use super::bounds::{bernstein_half_width, hoeffding_half_width};

pub const DEFAULT_DELTA: f64 = 0.05;

/// Label used for the `E[μ]` column.
pub const E_MU_LABEL: &str = "E[mu]";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFamily {
    Hoeffding,
    Bernstein,
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundFamily::Hoeffding => "hoeffding",
            BoundFamily::Bernstein => "bernstein",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub label: String,
    pub mean: f64,
    pub samples: u64,
    pub half_width: f64,
    pub confidence: f64,
    pub bound_family: BoundFamily,
    pub seed: u64,
    /// Unbiased sample variance.
    pub variance: f64,
}

impl EstimateReport {
    /// Builds a report from per-sample matching sizes. `n` is the node count
    /// that bounds every sample by `n/2`.
    pub fn from_values(
        label: impl Into<String>,
        values: &[u32],
        n: usize,
        delta: f64,
        family: BoundFamily,
        seed: u64,
    ) -> Result<Self, EstimatorError> {
        let k = values.len() as u64;
        if k == 0 {
            return Err(EstimatorError::NoSamples);
        }
        // Integer sums keep the result independent of summation order.
        let sum: u64 = values.iter().map(|&v| v as u64).sum();
        let sq: u128 = values.iter().map(|&v| (v as u128) * (v as u128)).sum();
        let mean = sum as f64 / k as f64;
        let variance = if k > 1 {
            (sq as f64 - (sum as f64) * mean) / (k - 1) as f64
        } else {
            0.0
        };
        let n = n.max(1);
        let half_width = match family {
            BoundFamily::Hoeffding => hoeffding_half_width(n, k, delta)?,
            BoundFamily::Bernstein => bernstein_half_width(n, k, delta)?,
        };
        Ok(Self {
            label: label.into(),
            mean,
            samples: k,
            half_width,
            confidence: 1.0 - delta,
            bound_family: family,
            seed,
            variance: variance.max(0.0),
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.mean - self.half_width, self.mean + self.half_width)
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.interval();
        lo <= x && x <= hi
    }

    /// CSV header matching [`EstimateReport::csv_row`].
    pub const CSV_HEADER: &'static str =
        "instance,strategy,samples,mean,half_width,confidence,seed,bound_family";

    pub fn csv_row(&self, instance: &str) -> String {
        format!(
            "{instance},{},{},{},{},{},{},{}",
            self.label,
            self.samples,
            self.mean,
            self.half_width,
            self.confidence,
            self.seed,
            self.bound_family
        )
    }
}

/// Per-sample matching sizes: one column per strategy, then `μ(σ)` if
/// requested. Columns have length `k`.
pub fn sample_columns(
    g: &WeightedGraph,
    strategies: &[Box<dyn Strategy>],
    with_mu: bool,
    k: u64,
    seed: u64,
) -> Result<Vec<Vec<u32>>, EstimatorError> {
    if k == 0 {
        return Err(EstimatorError::NoSamples);
    }
    let width = strategies.len() + with_mu as usize;
    let rows: Vec<Vec<u32>> = (0..k)
        .into_par_iter()
        .map_init(CardinalityMatcher::new, |matcher, i| {
            let scenario = sample_scenario(g, &mut rng_for(seed, &[i]));
            let mut row = Vec::with_capacity(width);
            for s in strategies {
                let mut s = s.clone_box();
                row.push(run_size(g, s.as_mut(), &scenario)? as u32);
            }
            if with_mu {
                row.push(matcher.size(g, scenario.as_set()) as u32);
            }
            Ok(row)
        })
        .collect::<Result<_, EstimatorError>>()?;
    let mut cols = vec![Vec::with_capacity(k as usize); width];
    for row in rows {
        for (c, v) in cols.iter_mut().zip(row) {
            c.push(v);
        }
    }
    Ok(cols)
}

/// Hoeffding estimate of `E|M(S, G)|` from `k` sampled scenarios.
pub fn estimate_strategy_value(
    g: &WeightedGraph,
    s: &dyn Strategy,
    k: u64,
    seed: u64,
) -> Result<EstimateReport, EstimatorError> {
    estimate_strategy_value_with(g, s, k, seed, DEFAULT_DELTA)
}

pub fn estimate_strategy_value_with(
    g: &WeightedGraph,
    s: &dyn Strategy,
    k: u64,
    seed: u64,
    delta: f64,
) -> Result<EstimateReport, EstimatorError> {
    let cols = sample_columns(g, &[s.clone_box()], false, k, seed)?;
    EstimateReport::from_values(
        s.name(),
        &cols[0],
        g.active_node_count(),
        delta,
        BoundFamily::Hoeffding,
        seed,
    )
}

/// Bernstein estimate of `E[μ]`, the expected maximum matching size of a
/// realization.
pub fn estimate_e_mu(g: &WeightedGraph, k: u64, seed: u64) -> Result<EstimateReport, EstimatorError> {
    estimate_e_mu_with(g, k, seed, DEFAULT_DELTA)
}

pub fn estimate_e_mu_with(
    g: &WeightedGraph,
    k: u64,
    seed: u64,
    delta: f64,
) -> Result<EstimateReport, EstimatorError> {
    let cols = sample_columns(g, &[], true, k, seed)?;
    EstimateReport::from_values(
        E_MU_LABEL,
        &cols[0],
        g.active_node_count(),
        delta,
        BoundFamily::Bernstein,
        seed,
    )
}

/// Estimates for several strategies and `E[μ]` on shared scenarios.
#[derive(Clone, Debug)]
pub struct CrnEstimate {
    pub strategies: Vec<EstimateReport>,
    pub e_mu: EstimateReport,
    /// Raw columns, strategies first and `μ` last.
    pub columns: Vec<Vec<u32>>,
}

pub fn estimate_crn(
    g: &WeightedGraph,
    strategies: &[Box<dyn Strategy>],
    k: u64,
    seed: u64,
    delta: f64,
) -> Result<CrnEstimate, EstimatorError> {
    let columns = sample_columns(g, strategies, true, k, seed)?;
    let n = g.active_node_count();
    let reports = strategies
        .iter()
        .zip(&columns)
        .map(|(s, c)| EstimateReport::from_values(s.name(), c, n, delta, BoundFamily::Hoeffding, seed))
        .collect::<Result<_, _>>()?;
    let e_mu = EstimateReport::from_values(
        E_MU_LABEL,
        columns.last().expect("mu column"),
        n,
        delta,
        BoundFamily::Bernstein,
        seed,
    )?;
    Ok(CrnEstimate {
        strategies: reports,
        e_mu,
        columns,
    })
}

/// Running means after every `every` samples (and after the last one).
pub fn convergence_trace(values: &[u32], every: usize) -> Vec<(usize, f64)> {
    let every = every.max(1);
    let mut out = Vec::new();
    let mut sum = 0u64;
    for (i, &v) in values.iter().enumerate() {
        sum += v as u64;
        let k = i + 1;
        if k % every == 0 || k == values.len() {
            out.push((k, sum as f64 / k as f64));
        }
    }
    out
}

/// Writes `label,samples,running_mean` lines for a trace.
pub fn write_trace_csv<W: Write>(
    mut w: W,
    label: &str,
    trace: &[(usize, f64)],
    header: bool,
) -> io::Result<()> {
    if header {
        writeln!(w, "strategy,samples,running_mean")?;
    }
    for (k, m) in trace {
        writeln!(w, "{label},{k},{m}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Scenario;
    use crate::matching::scenario_matching_number;
    use crate::simulator::{strategy_value, StrategyKind};

    fn single(p: f64) -> WeightedGraph {
        WeightedGraph::new(2, [(0, 1, p)]).unwrap()
    }

    #[test]
    fn certain_edge() {
        let g = single(1.0);
        let s = StrategyKind::MaxP.build(&g).unwrap();
        let r = estimate_strategy_value(&g, s.as_ref(), 50, 1).unwrap();
        assert_eq!(r.mean, 1.0);
        assert_eq!(r.variance, 0.0);
        assert!(r.half_width > 0.0);
    }

    #[test]
    fn half_edge_within_width() {
        let g = single(0.5);
        let s = StrategyKind::MaxP.build(&g).unwrap();
        let r = estimate_strategy_value(&g, s.as_ref(), 100_000, 2).unwrap();
        assert!(r.contains(0.5), "{r:?}");
        let m = estimate_e_mu(&g, 100_000, 2).unwrap();
        assert_eq!(m.mean, r.mean);
    }

    #[test]
    fn e_mu_small_graphs() {
        let two = WeightedGraph::new(4, [(0, 1, 0.3), (2, 3, 0.3)]).unwrap();
        let r = estimate_e_mu(&two, 20_000, 3).unwrap();
        assert!(r.contains(0.6));
        let tri = WeightedGraph::new(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)]).unwrap();
        let exact: f64 = Scenario::enumerate(&tri)
            .map(|(s, p)| p * scenario_matching_number(&tri, &s) as f64)
            .sum();
        assert!((exact - 0.875).abs() < 1e-12);
        let r = estimate_e_mu(&tri, 20_000, 4).unwrap();
        assert!(r.contains(exact));
    }

    #[test]
    fn crn_and_thread_independence() {
        let g = WeightedGraph::new(
            6,
            [(0, 1, 0.3), (1, 2, 0.6), (2, 3, 0.5), (3, 4, 0.8), (4, 5, 0.2), (0, 5, 0.7)],
        )
        .unwrap();
        let s = StrategyKind::MinAvgDeg.build(&g).unwrap();
        let exact = strategy_value(&g, s.as_ref()).unwrap();
        let a = estimate_strategy_value(&g, s.as_ref(), 100_000, 5).unwrap();
        assert!(a.contains(exact));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| estimate_strategy_value(&g, s.as_ref(), 100_000, 5).unwrap());
        assert_eq!(a, b);
        let both = estimate_crn(&g, &[s.clone()], 1000, 5, 0.05).unwrap();
        for (x, m) in both.columns[0].iter().zip(&both.columns[1]) {
            assert!(x <= m);
        }
    }

    #[test]
    fn trace_points() {
        let t = convergence_trace(&[1, 0, 1, 1, 0], 2);
        assert_eq!(t, vec![(2, 0.5), (4, 0.75), (5, 0.6)]);
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, "x", &t, true).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("strategy,samples,running_mean\nx,2,0.5"));
    }
}
