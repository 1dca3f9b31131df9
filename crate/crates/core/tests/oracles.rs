//! Checks against oracles written here, independent of the library code.

use crossings::estimator::exhaustive_moments;
use crossings::graph::{erdos_renyi, FamilySpec, Graph};
use crossings::moments::{expectation_rla, variance_rla};
use crossings::validation::{validate_graph6_corpus, ValidationConfig};
use crossings::{graph6, pruefer};

fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn atlas() -> Vec<Graph> {
    graph6::decode_all(&std::fs::read_to_string(data("atlas_n1_7.g6")).unwrap()).unwrap()
}

/// Straightforward graph6 writer built from a bit vector.
fn reference_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62);
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i + 1, j + 1));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        s.push((v + 63) as char);
    }
    s
}

fn independent_pairs(g: &Graph) -> u64 {
    let e = g.edges();
    let mut c = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let (a, b) = e[i];
            if ![a, b].contains(&e[j].0) && ![a, b].contains(&e[j].1) {
                c += 1;
            }
        }
    }
    c
}

#[test]
fn atlas_counts_per_order() {
    let mut counts = [0usize; 8];
    for g in atlas() {
        counts[g.n()] += 1;
    }
    assert_eq!(counts[1..], [1, 2, 4, 11, 34, 156, 1044]);
}

#[test]
fn graph6_matches_reference_encoder() {
    for g in atlas() {
        assert_eq!(graph6::encode(&g), reference_graph6(&g));
    }
    for n in 4..=20 {
        let mut specs = vec![
            FamilySpec::Complete(n),
            FamilySpec::Cycle(n),
            FamilySpec::LinearTree(n),
            FamilySpec::QuasiStar(n),
            FamilySpec::Star(n),
            FamilySpec::CompleteBipartite(n / 2, n - n / 2),
            FamilySpec::StarPlusIsolated { lambda: n / 2, n },
        ];
        if n % 2 == 0 {
            specs.push(FamilySpec::OneRegular(n));
        }
        for spec in specs {
            let g = spec.generate().unwrap();
            let text = reference_graph6(&g);
            assert_eq!(graph6::encode(&g), text, "{spec}");
            assert_eq!(graph6::decode(&text).unwrap(), g, "{spec}");
        }
    }
}

#[test]
fn size_q_equals_pair_count() {
    let mut corpus = atlas();
    corpus.extend((2..=6).flat_map(|n| pruefer::all_trees(n).map(|(_, t)| t)));
    corpus.extend((0..30).map(|s| erdos_renyi(15, 0.3, s).unwrap()));
    for g in corpus {
        assert_eq!(g.size_q(), independent_pairs(&g), "{g:?}");
    }
}

#[test]
fn exhaustive_agrees_with_theory_on_atlas_up_to_six() {
    for g in atlas().into_iter().filter(|g| g.n() <= 6) {
        let r = exhaustive_moments(&g, 10, true).unwrap();
        assert_eq!(r.mean, expectation_rla(&g), "{g:?}");
        assert_eq!(r.variance, variance_rla(&g), "{g:?}");
    }
}

#[test]
fn zero_variance_only_when_crossings_are_constant() {
    for g in atlas() {
        let counter = crossings::CrossingCounter::new(&g);
        let values: std::collections::BTreeSet<u64> =
            crossings::arrangement::all_arrangements(g.n())
                .map(|a| counter.count(&a).unwrap())
                .collect();
        assert_eq!(
            values.len() == 1,
            variance_rla(&g) == crossings::exact::int(0),
            "{g:?}"
        );
    }
}

#[test]
fn four_vertex_corpus_and_k4() {
    let report =
        validate_graph6_corpus(&data("atlas_n4.g6"), None, &ValidationConfig::default()).unwrap();
    assert!(report.success, "{:?}", report.failures);
    assert_eq!(report.graphs_checked, 11);
    let k4 = graph6::decode("C~").unwrap();
    assert_eq!(variance_rla(&k4), crossings::exact::int(0));
    assert_eq!(
        exhaustive_moments(&k4, 10, false).unwrap().variance,
        crossings::exact::int(0)
    );
    assert_eq!(
        crossings::closed_forms::closed_variance(FamilySpec::Complete(4)).unwrap(),
        crossings::exact::int(0)
    );
}

#[test]
fn cycle_five_by_brute_force() {
    let g = FamilySpec::Cycle(5).generate().unwrap();
    let counter = crossings::CrossingCounter::new(&g);
    let (mut s, mut s2) = (0i64, 0i64);
    for a in crossings::arrangement::all_arrangements(5) {
        let c = counter.count(&a).unwrap() as i64;
        s += c;
        s2 += c * c;
    }
    let var = crossings::exact::ratio(120 * s2 - s * s, 120 * 120);
    assert_eq!(var, crossings::exact::ratio(25, 18));
    assert_eq!(
        crossings::closed_forms::closed_variance(FamilySpec::Cycle(5)).unwrap(),
        var
    );
}
