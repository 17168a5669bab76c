use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::blood::{blood_type_compatible, AboPair, AboType};
use crate::graph::WeightedGraph;

use super::config::{EdgeRule, GeneratorConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatientDonorPair {
    pub patient_abo: AboType,
    pub donor_abo: AboType,
    pub is_wife: bool,
    /// Index into [`GeneratorConfig::pra`].
    pub pra_level: usize,
    /// Positive-crossmatch probability of the patient against other donors.
    pub sensitization: f64,
    pub internally_compatible: bool,
}

impl PatientDonorPair {
    pub fn label(&self) -> AboPair {
        AboPair::new(self.patient_abo, self.donor_abo)
    }
}

/// Positive-crossmatch probability of a patient with her own donor.
fn own_crossmatch(cfg: &GeneratorConfig, sensitization: f64, wife: bool) -> f64 {
    if wife {
        1.0 - cfg.wife_crossmatch_factor * (1.0 - sensitization)
    } else {
        sensitization
    }
}

/// Draws one pair: blood types, wife flag and PRA level independently, then
/// internal compatibility given those.
pub fn sample_pair<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> PatientDonorPair {
    let abo = WeightedIndex::new(cfg.abo).expect("validated ABO weights");
    let pra = WeightedIndex::new(cfg.pra.iter().map(|l| l.probability)).expect("validated PRA");
    let patient_abo = AboType::ALL[abo.sample(rng)];
    let donor_abo = AboType::ALL[abo.sample(rng)];
    let is_wife = rng.random::<f64>() < cfg.wife_probability;
    let pra_level = pra.sample(rng);
    let sensitization = cfg.pra[pra_level].sensitization;
    let negative_xm = rng.random::<f64>() >= own_crossmatch(cfg, sensitization, is_wife);
    PatientDonorPair {
        patient_abo,
        donor_abo,
        is_wife,
        pra_level,
        sensitization,
        internally_compatible: blood_type_compatible(patient_abo, donor_abo) && negative_xm,
    }
}

/// Rejection-samples until the pair is internally incompatible.
pub fn sample_incompatible_pair<R: Rng + ?Sized>(
    cfg: &GeneratorConfig,
    rng: &mut R,
) -> PatientDonorPair {
    loop {
        let pair = sample_pair(cfg, rng);
        if !pair.internally_compatible {
            return pair;
        }
    }
}

/// Probability that `u` and `v` can swap donors: 0 unless their blood types
/// are cross-compatible, otherwise at least the configured floor.
pub fn crossmatch_probability(
    u: &PatientDonorPair,
    v: &PatientDonorPair,
    cfg: &GeneratorConfig,
) -> f64 {
    if !u.label().cross_compatible(v.label()) {
        return 0.0;
    }
    let (a, b) = (1.0 - u.sensitization, 1.0 - v.sensitization);
    let p = match cfg.edge_rule {
        EdgeRule::Product => a * b,
        EdgeRule::Min => a.min(b),
    };
    p.clamp(cfg.probability_floor, 1.0)
}

/// Builds the weighted compatibility graph on `pairs`, one node per pair in
/// order, with blood-type labels attached.
pub fn instance_from_pairs(pairs: &[PatientDonorPair], cfg: &GeneratorConfig) -> WeightedGraph {
    let mut edges = Vec::new();
    for (i, u) in pairs.iter().enumerate() {
        for (j, v) in pairs.iter().enumerate().skip(i + 1) {
            let p = crossmatch_probability(u, v, cfg);
            if p > 0.0 {
                edges.push((i, j, p));
            }
        }
    }
    WeightedGraph::new(pairs.len(), edges)
        .expect("generated edges are valid")
        .with_labels(pairs.iter().map(PatientDonorPair::label).collect())
        .expect("one label per node")
}

pub fn generate_pairs<R: Rng + ?Sized>(
    n: usize,
    cfg: &GeneratorConfig,
    rng: &mut R,
) -> Vec<PatientDonorPair> {
    (0..n).map(|_| sample_incompatible_pair(cfg, rng)).collect()
}

/// A random instance with `n` incompatible pairs.
pub fn generate_instance<R: Rng + ?Sized>(
    n: usize,
    cfg: &GeneratorConfig,
    rng: &mut R,
) -> WeightedGraph {
    instance_from_pairs(&generate_pairs(n, cfg, rng), cfg)
}

/// `Pr(type = i/j | incompatible)` for every label, indexed by
/// [`AboPair::index`].
pub fn incompatible_type_law(cfg: &GeneratorConfig) -> [f64; 16] {
    // Probability that a pair with compatible blood types has a positive
    // crossmatch with its own donor, averaged over wife flag and PRA.
    let positive: f64 = cfg
        .pra
        .iter()
        .map(|l| {
            l.probability
                * (cfg.wife_probability * own_crossmatch(cfg, l.sensitization, true)
                    + (1.0 - cfg.wife_probability) * own_crossmatch(cfg, l.sensitization, false))
        })
        .sum();
    let mut law = [0.0; 16];
    for p in AboType::ALL {
        for d in AboType::ALL {
            let joint = cfg.abo[p.index()] * cfg.abo[d.index()];
            let incompatible = if blood_type_compatible(p, d) { positive } else { 1.0 };
            law[AboPair::new(p, d).index()] = joint * incompatible;
        }
    }
    let total: f64 = law.iter().sum();
    law.map(|x| x / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    fn pair(label: &str, s: f64) -> PatientDonorPair {
        let l: AboPair = label.parse().unwrap();
        PatientDonorPair {
            patient_abo: l.patient,
            donor_abo: l.donor,
            is_wife: false,
            pra_level: 0,
            sensitization: s,
            internally_compatible: false,
        }
    }

    #[test]
    fn incompatible_blood_list() {
        use AboType::*;
        let listed = [(O, A), (O, B), (O, AB), (A, B), (A, AB), (B, A), (B, AB)];
        for p in AboType::ALL {
            for d in AboType::ALL {
                assert_eq!(blood_type_compatible(p, d), !listed.contains(&(p, d)), "{p}/{d}");
            }
        }
    }

    #[test]
    fn crossmatch_rules() {
        let cfg = GeneratorConfig::default();
        assert_eq!(crossmatch_probability(&pair("O/A", 0.05), &pair("A/A", 0.05), &cfg), 0.0);
        let p = crossmatch_probability(&pair("O/O", 0.05), &pair("O/O", 0.05), &cfg);
        assert!(p >= cfg.probability_floor && p <= 1.0);
        assert!((p - 0.95 * 0.95).abs() < 1e-15);
        let mut rng = rng_from_seed(3);
        for _ in 0..200 {
            let u = sample_incompatible_pair(&cfg, &mut rng);
            let v = sample_incompatible_pair(&cfg, &mut rng);
            assert_eq!(crossmatch_probability(&u, &v, &cfg), crossmatch_probability(&v, &u, &cfg));
        }
    }

    #[test]
    fn degenerate_config_accepts_first_draw() {
        let mut cfg = GeneratorConfig::default();
        for l in &mut cfg.pra {
            l.sensitization = 1.0;
        }
        let mut a = rng_from_seed(5);
        let mut b = rng_from_seed(5);
        let first = sample_pair(&cfg, &mut a);
        assert!(!first.internally_compatible);
        assert_eq!(sample_incompatible_pair(&cfg, &mut b), first);
    }

    #[test]
    fn small_instances() {
        let cfg = GeneratorConfig::default();
        let pairs = [pair("A/B", 0.05), pair("B/A", 0.9)];
        let g = instance_from_pairs(&pairs, &cfg);
        assert_eq!(g.edge_count(), 1);
        let p = g.prob(crate::graph::EdgeId(0));
        assert!(p >= cfg.probability_floor && p <= 1.0);
        let g = generate_instance(30, &cfg, &mut rng_from_seed(1));
        let h = generate_instance(30, &cfg, &mut rng_from_seed(1));
        assert_eq!(crate::format::write_graph(&g), crate::format::write_graph(&h));
        assert!(g.edges().all(|(_, e)| e.p >= cfg.probability_floor));
    }

    #[test]
    fn law_sums_to_one() {
        let law = incompatible_type_law(&GeneratorConfig::default());
        assert!((law.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(law.iter().all(|&x| x > 0.0));
    }
}
