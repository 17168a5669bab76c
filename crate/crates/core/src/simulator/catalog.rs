use std::fmt;
use std::str::FromStr;

use crate::error::StrategyError;
use crate::graph::WeightedGraph;

use super::heuristics::{
    BatchMatching, MatchingWeights, MaxProb, MinAvgDegree, MinDegree, MinProb, SuccessiveMatching,
};
use super::pendant::pendant_first;
use super::structured::blood_type_decomposition;
use super::Strategy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    MaxP,
    MinP,
    MinDeg,
    MinAvgDeg,
    BatchSm,
    BatchWsm,
    SwmQ,
    SwmP,
    BloodDecomp,
}

/// The eight heuristics in table-column order.
pub const HEURISTICS: [StrategyKind; 8] = [
    StrategyKind::MaxP,
    StrategyKind::MinP,
    StrategyKind::MinDeg,
    StrategyKind::MinAvgDeg,
    StrategyKind::BatchSm,
    StrategyKind::BatchWsm,
    StrategyKind::SwmQ,
    StrategyKind::SwmP,
];

impl StrategyKind {
    pub const ALL: [StrategyKind; 9] = [
        StrategyKind::MaxP,
        StrategyKind::MinP,
        StrategyKind::MinDeg,
        StrategyKind::MinAvgDeg,
        StrategyKind::BatchSm,
        StrategyKind::BatchWsm,
        StrategyKind::SwmQ,
        StrategyKind::SwmP,
        StrategyKind::BloodDecomp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::MaxP => "maxP",
            StrategyKind::MinP => "minP",
            StrategyKind::MinDeg => "minDeg",
            StrategyKind::MinAvgDeg => "minAvgDeg",
            StrategyKind::BatchSm => "batchSM",
            StrategyKind::BatchWsm => "batchWSM",
            StrategyKind::SwmQ => "SWMq",
            StrategyKind::SwmP => "SWMp",
            StrategyKind::BloodDecomp => "bloodDecomp",
        }
    }

    /// Builds a fresh instance for `g`. Heuristics come wrapped in the
    /// pendant-first rule.
    pub fn build(self, g: &WeightedGraph) -> Result<Box<dyn Strategy>, StrategyError> {
        let inner: Box<dyn Strategy> = match self {
            StrategyKind::MaxP => Box::new(MaxProb::new(g)),
            StrategyKind::MinP => Box::new(MinProb::new(g)),
            StrategyKind::MinDeg => Box::new(MinDegree),
            StrategyKind::MinAvgDeg => Box::new(MinAvgDegree::default()),
            StrategyKind::BatchSm => Box::new(BatchMatching::cardinality()),
            StrategyKind::BatchWsm => {
                Box::new(BatchMatching::weighted(g, MatchingWeights::OneMinusP))
            }
            StrategyKind::SwmQ => Box::new(SuccessiveMatching::new(g, MatchingWeights::OneMinusP)),
            StrategyKind::SwmP => Box::new(SuccessiveMatching::new(g, MatchingWeights::P)),
            StrategyKind::BloodDecomp => return Ok(Box::new(blood_type_decomposition(g)?)),
        };
        Ok(pendant_first(inner))
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| StrategyError::UnknownStrategy {
                name: s.to_string(),
                valid: StrategyKind::ALL.map(|k| k.name()).join(", "),
            })
    }
}

/// Looks up a strategy by its CLI name and builds it for `g`.
pub fn build_strategy(name: &str, g: &WeightedGraph) -> Result<Box<dyn Strategy>, StrategyError> {
    name.parse::<StrategyKind>()?.build(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::strategy_value;

    #[test]
    fn names_round_trip() {
        for k in StrategyKind::ALL {
            assert_eq!(k.name().parse::<StrategyKind>().unwrap(), k);
        }
        let err = "bogus".parse::<StrategyKind>().unwrap_err();
        assert!(err.to_string().contains("minAvgDeg"));
    }

    #[test]
    fn trivial_values() {
        let one = WeightedGraph::new(2, [(0, 1, 0.37)]).unwrap();
        let two = WeightedGraph::new(4, [(0, 1, 0.37), (2, 3, 0.8)]).unwrap();
        for k in HEURISTICS {
            let v = strategy_value(&one, k.build(&one).unwrap().as_ref()).unwrap();
            assert!((v - 0.37).abs() < 1e-12, "{k}");
            let v = strategy_value(&two, k.build(&two).unwrap().as_ref()).unwrap();
            assert!((v - 1.17).abs() < 1e-12, "{k}");
        }
    }

    #[test]
    fn triangle_values() {
        // triangle a=0-1 (0.9), b=1-2 (0.5), c=0-2 (0.1): after the first
        // query x, a success ends the run and a failure leaves a 2-path
        // peeled from its lowest-index pendant. Value of querying x first:
        // p_x + (1 - p_x) * (p_y + p_z - p_y p_z).
        let g = WeightedGraph::new(3, [(0, 1, 0.9), (1, 2, 0.5), (0, 2, 0.1)]).unwrap();
        let first = |px: f64, py: f64, pz: f64| px + (1.0 - px) * (py + pz - py * pz);
        let a = first(0.9, 0.5, 0.1);
        let c = first(0.1, 0.9, 0.5);
        let expected = [
            (StrategyKind::MaxP, a),
            (StrategyKind::MinP, c),
            (StrategyKind::MinDeg, a),
            (StrategyKind::MinAvgDeg, c),
            (StrategyKind::BatchSm, a),
            (StrategyKind::BatchWsm, c),
            (StrategyKind::SwmQ, c),
            (StrategyKind::SwmP, a),
        ];
        for (k, want) in expected {
            let v = strategy_value(&g, k.build(&g).unwrap().as_ref()).unwrap();
            assert!((v - want).abs() < 1e-12, "{k}: {v} vs {want}");
        }
    }
}
