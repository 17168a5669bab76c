use query_commit::kidney::{
    generate_instance, generate_pairs, incompatible_type_law, AboPair, AboType, GeneratorConfig,
};
use query_commit::seed::rng_for;

fn counts(cfg: &GeneratorConfig, n: usize, seeds: u64, salt: u64) -> Vec<[u32; 16]> {
    (0..seeds)
        .map(|s| {
            let g = generate_instance(n, cfg, &mut rng_for(salt, &[s]));
            let mut c = [0u32; 16];
            for l in g.labels().expect("generated graphs are labelled") {
                c[l.index()] += 1;
            }
            c
        })
        .collect()
}

fn label(s: &str) -> AboPair {
    s.parse().unwrap()
}

#[test]
fn probabilities_respect_the_floor() {
    let cfg = GeneratorConfig::default();
    for s in 0..20 {
        let g = generate_instance(60, &cfg, &mut rng_for(1, &[s]));
        for (_, e) in g.edges() {
            assert!(e.p >= cfg.probability_floor && e.p <= 1.0);
        }
    }
}

#[test]
fn labels_partition_nodes_and_edges_follow_blood_types() {
    let cfg = GeneratorConfig::default();
    let g = generate_instance(80, &cfg, &mut rng_for(2, &[]));
    let labels = g.labels().unwrap();
    assert_eq!(labels.len(), g.node_count());
    for u in 0..g.node_count() {
        for v in u + 1..g.node_count() {
            let edge = g.find_edge(query_commit::NodeId(u), query_commit::NodeId(v));
            assert_eq!(edge.is_some(), labels[u].cross_compatible(labels[v]), "{u}-{v}");
        }
    }
    // `i/i` groups are cliques and `i/j`, `j/i` groups are joined completely.
    for u in 0..g.node_count() {
        for v in u + 1..g.node_count() {
            let (a, b) = (labels[u], labels[v]);
            let same_diag = a == b && a.patient == a.donor;
            let mirrored = a.patient == b.donor && a.donor == b.patient;
            if same_diag || mirrored {
                assert!(g.find_edge(query_commit::NodeId(u), query_commit::NodeId(v)).is_some());
            }
        }
    }
}

#[test]
fn type_frequencies_follow_the_conditional_law() {
    let cfg = GeneratorConfig::default();
    let (n, seeds) = (100, 300);
    let all = counts(&cfg, n, seeds, 3);
    let law = incompatible_type_law(&cfg);
    let total = (n as u64 * seeds) as f64;
    for t in 0..16 {
        let observed: f64 = all.iter().map(|c| c[t] as f64).sum::<f64>() / total;
        let tol = 4.0 * (law[t] * (1.0 - law[t]) / total).sqrt();
        assert!((observed - law[t]).abs() <= tol, "type {t}: {observed} vs {}", law[t]);
        assert!(law[t] > 0.0);
    }
}

#[test]
fn mirrored_types_are_symmetric_when_both_are_blood_incompatible() {
    let cfg = GeneratorConfig::default();
    let law = incompatible_type_law(&cfg);
    let (ab, ba) = (label("A/B").index(), label("B/A").index());
    assert!((law[ab] - law[ba]).abs() < 1e-15);
    let (n, seeds) = (100, 400);
    let all = counts(&cfg, n, seeds, 4);
    let mean = |t: usize| all.iter().map(|c| c[t] as f64).sum::<f64>() / seeds as f64;
    let var = law[ab] * (1.0 - law[ab]) * n as f64;
    let tol = 4.0 * (2.0 * var / seeds as f64).sqrt();
    assert!((mean(ab) - mean(ba)).abs() <= tol);
    // A compatible mirror is only incompatible through a positive
    // crossmatch, so O/A is far more common than A/O.
    let (oa, ao) = (label("O/A").index(), label("A/O").index());
    assert!(law[oa] > 3.0 * law[ao]);
}

/// Per-seed label counts of `n` incompatible pairs.
fn pair_counts(cfg: &GeneratorConfig, n: usize, seeds: u64, salt: u64) -> Vec<[u32; 16]> {
    (0..seeds)
        .map(|s| {
            let mut c = [0u32; 16];
            for p in generate_pairs(n, cfg, &mut rng_for(salt, &[s])) {
                c[p.label().index()] += 1;
            }
            c
        })
        .collect()
}

/// Fraction of seeds whose counts on `cells` all lie within `(1 ± α)` of
/// the empirical mean.
fn typical_fraction(all: &[[u32; 16]], cells: &[usize], alpha: f64) -> f64 {
    let k = all.len() as f64;
    let mean: Vec<f64> = (0..16)
        .map(|t| all.iter().map(|c| c[t] as f64).sum::<f64>() / k)
        .collect();
    let typical = all
        .iter()
        .filter(|c| {
            cells.iter().all(|&t| {
                let v = c[t] as f64;
                (1.0 - alpha) * mean[t] <= v && v <= (1.0 + alpha) * mean[t]
            })
        })
        .count();
    typical as f64 / k
}

#[test]
fn common_types_are_typical() {
    let cfg = GeneratorConfig::default();
    let law = incompatible_type_law(&cfg);
    let n = 400;
    let common: Vec<usize> = (0..16).filter(|&t| law[t] * n as f64 >= 15.0).collect();
    assert!(common.len() >= 6);
    let all = pair_counts(&cfg, n, 200, 5);
    let f = typical_fraction(&all, &common, 0.5);
    assert!(f > 0.9, "{f}");
}

#[test]
fn typicality_of_all_types_grows_with_n() {
    let cfg = GeneratorConfig::default();
    let every: Vec<usize> = (0..16).collect();
    let small = typical_fraction(&pair_counts(&cfg, 100, 200, 6), &every, 0.5);
    let large = typical_fraction(&pair_counts(&cfg, 1600, 200, 6), &every, 0.5);
    assert!(large > small + 0.1, "{small} -> {large}");
}

#[test]
fn rare_types_exist_at_every_size() {
    let law = incompatible_type_law(&GeneratorConfig::default());
    let ab_ab = law[AboPair::new(AboType::AB, AboType::AB).index()];
    assert!(ab_ab > 0.0 && ab_ab < 0.01);
}

#[test]
fn config_hash_ignores_comments() {
    let cfg = GeneratorConfig::default();
    let reparsed: GeneratorConfig = format!("# a comment\n\n{}", cfg.to_text()).parse().unwrap();
    assert_eq!(reparsed.hash(), cfg.hash());
}
