//! Cross-checks of every computation path over graph corpora.
//!
//! Theoretical quantities are compared as exact rationals. Tolerances only
//! appear in Monte Carlo checks, and each one is spelled out in its check id.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{closed_expectation, closed_freq, closed_variance};
use crate::error::{Error, Result};
use crate::estimator::{exhaustive_moments, monte_carlo_moments};
use crate::exact::{binom, fraction_string, int, to_f64};
use crate::graph::{erdos_renyi, FamilySpec, Graph};
use crate::graph6;
use crate::moments::{
    expectation_rla, tree_variance_from_freq, variance_from_freq, variance_from_freq_layout,
    LayoutConstants,
};
use crate::product_types::{
    freq_brute, freq_fast, graphette_census, q_pairs, FreqVector, ProductType,
};
use crate::pruefer;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidationConfig {
    /// Largest `n` checked against exhaustive enumeration.
    pub exhaustive_limit: usize,
    /// Largest `|Q|` checked against brute-force classification.
    pub brute_limit: u64,
    /// Whether to run the (quartic) graphette census.
    pub graphettes: bool,
    /// Samples per Monte Carlo spot check.
    pub samples: u64,
    pub seed: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            exhaustive_limit: 8,
            brute_limit: crate::product_types::DEFAULT_BRUTE_LIMIT,
            graphettes: false,
            samples: 20_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub witness: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub corpus: String,
    pub graphs_checked: usize,
    pub checks: Vec<String>,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
    pub success: bool,
    /// Distinct variances seen, per vertex count.
    pub variances: BTreeMap<usize, BTreeSet<String>>,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of the battery on one graph.
#[derive(Default)]
struct Outcome {
    checks: BTreeSet<&'static str>,
    failures: Vec<Failure>,
    variance: Option<(usize, String)>,
    freq: FreqVector,
}

impl Outcome {
    fn check(
        &mut self,
        witness: &str,
        id: &'static str,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.checks.insert(id);
        if !ok {
            self.failures.push(Failure {
                witness: witness.to_string(),
                check: id.to_string(),
                detail: detail(),
            });
        }
    }
}

fn is_forest(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..=g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// The battery shared by every corpus.
fn check_graph(g: &Graph, witness: &str, config: &ValidationConfig) -> Outcome {
    let mut out = Outcome::default();
    let q = g.size_q();

    let brute_q = q_pairs(g).len() as u64;
    out.check(witness, "size_q_vs_pair_count", q == brute_q, || {
        format!("{q} vs {brute_q}")
    });
    let q_edge_sum: u64 = g
        .edges()
        .iter()
        .map(|&(s, t)| g.q_edge(s, t).unwrap_or(0))
        .sum();
    out.check(witness, "q_edge_sum", q_edge_sum == 2 * q, || {
        format!("sum {q_edge_sum}, |Q| = {q}")
    });
    let zero = g.is_q_zero();
    out.check(witness, "is_q_zero", zero.is_some() == (q == 0), || {
        format!("witness {zero:?}, |Q| = {q}")
    });

    let fast = freq_fast(g);
    if q <= config.brute_limit {
        match freq_brute(g, config.brute_limit) {
            Ok(brute) => out.check(witness, "fast_vs_brute", fast == brute, || {
                format!("fast {fast}, brute {brute}")
            }),
            Err(e) => out.check(witness, "fast_vs_brute", false, || e.to_string()),
        }
    }
    let q2 = q as u128 * q as u128;
    out.check(witness, "sum_of_frequencies", fast.total() == q2, || {
        format!("{} vs |Q|^2 = {q2}", fast.total())
    });
    out.check(witness, "f24_equals_q", fast[ProductType::T24] == q, || {
        format!("f24 = {}", fast[ProductType::T24])
    });
    let odd = fast.parity_violations();
    out.check(witness, "parity", odd.is_empty(), || {
        format!("odd types {odd:?}")
    });
    let small: Vec<_> = ProductType::ALL
        .into_iter()
        .filter(|t| g.n() < t.vertex_count() && fast[*t] != 0)
        .collect();
    out.check(witness, "vertex_threshold", small.is_empty(), || {
        format!("non-zero types {small:?}")
    });

    let variance = variance_from_freq(&fast);
    let weighted = variance_from_freq_layout(&fast, &LayoutConstants::rla());
    out.check(
        witness,
        "variance_vs_weighted_sum",
        variance == weighted,
        || format!("{variance} vs {weighted}"),
    );
    out.check(
        witness,
        "variance_non_negative",
        !variance.is_negative(),
        || variance.to_string(),
    );
    if is_forest(g) {
        out.check(
            witness,
            "f04_zero_in_forest",
            fast[ProductType::T04] == 0,
            || fast.to_string(),
        );
        let tree_form = tree_variance_from_freq(&fast);
        out.check(witness, "tree_form_variance", tree_form == variance, || {
            format!("{tree_form} vs {variance}")
        });
    }
    let n = g.n() as i64;
    if g.m() as u128 == binom(n, 2) {
        let expected = int(binom(n, 4));
        let mean = expectation_rla(g);
        out.check(
            witness,
            "complete_graph_fixture",
            variance.is_zero() && mean == expected,
            || format!("E = {mean}, Var = {variance}"),
        );
    }

    if config.graphettes {
        let implied = graphette_census(g).implied_freq();
        out.check(witness, "graphette_identities", implied == fast, || {
            format!("census {implied}, fast {fast}")
        });
    }

    if g.n() <= config.exhaustive_limit {
        match exhaustive_moments(g, config.exhaustive_limit, true) {
            Ok(report) => {
                let mean = expectation_rla(g);
                out.check(witness, "exhaustive_mean", report.mean == mean, || {
                    format!("{} vs {mean}", report.mean)
                });
                out.check(
                    witness,
                    "exhaustive_variance",
                    report.variance == variance,
                    || format!("{} vs {variance}", report.variance),
                );
                out.check(
                    witness,
                    "crossings_at_most_q",
                    report.max_observed <= q,
                    || format!("max C = {}, |Q| = {q}", report.max_observed),
                );
            }
            Err(e) => out.check(witness, "exhaustive_variance", false, || e.to_string()),
        }
    }
    out.variance = Some((g.n(), fraction_string(&variance)));
    out.freq = fast;
    out
}

fn assemble(corpus: String, start: Instant, outcomes: Vec<Outcome>) -> ValidationReport {
    let mut checks = BTreeSet::new();
    let mut failures = Vec::new();
    let mut variances: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    let graphs_checked = outcomes.iter().filter(|o| o.variance.is_some()).count();
    for o in outcomes {
        checks.extend(o.checks.iter().map(|c| c.to_string()));
        failures.extend(o.failures);
        if let Some((n, v)) = o.variance {
            variances.entry(n).or_default().insert(v);
        }
    }
    failures.sort();
    ValidationReport {
        corpus,
        graphs_checked,
        checks: checks.into_iter().collect(),
        success: failures.is_empty(),
        failures,
        elapsed_secs: start.elapsed().as_secs_f64(),
        variances,
    }
}

/// Every labeled tree on `2..=n_max` vertices, enumerated by Prüfer code.
pub fn validate_trees(n_max: usize, config: &ValidationConfig) -> Result<ValidationReport> {
    if n_max > 9 {
        return Err(Error::InvalidParameter(format!(
            "tree enumeration is capped at n = 9, got {n_max}"
        )));
    }
    let start = Instant::now();
    let mut items = Vec::new();
    for n in 2..=n_max {
        items.extend(pruefer::codes(n).map(|code| (n, code)));
    }
    let outcomes = items
        .into_par_iter()
        .map(|(n, code)| {
            let tree = pruefer::decode(n, &code).expect("enumerated code");
            let witness = format!("tree n={n} code={code:?}");
            let mut o = check_graph(&tree, &witness, config);
            o.check(&witness, "tree_edge_count", tree.m() == n - 1, || {
                format!("m = {}", tree.m())
            });
            o
        })
        .collect();
    Ok(assemble(
        format!("labeled trees, n = 2..={n_max}"),
        start,
        outcomes,
    ))
}

/// Every graph of a graph6 file, or the first `limit` of them.
pub fn validate_graph6_corpus(
    path: &Path,
    limit: Option<usize>,
    config: &ValidationConfig,
) -> Result<ValidationReport> {
    let start = Instant::now();
    let text = std::fs::read_to_string(path)?;
    let mut graphs: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .collect();
    if let Some(limit) = limit {
        graphs.truncate(limit);
    }
    let decoded = graphs
        .into_iter()
        .map(|(line, code)| {
            graph6::decode(&code)
                .map(|g| (line, code, g))
                .map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let outcomes = decoded
        .into_par_iter()
        .map(|(line, code, g)| check_graph(&g, &format!("line {line:>6} {code}"), config))
        .collect();
    Ok(assemble(
        format!("graph6 {}", path.display()),
        start,
        outcomes,
    ))
}

/// Closed forms against the general path for every family up to `n_max`,
/// exhaustive enumeration for small sizes and Monte Carlo spot checks.
pub fn validate_families(n_max: usize, config: &ValidationConfig) -> Result<ValidationReport> {
    if !(4..=100).contains(&n_max) {
        return Err(Error::InvalidParameter(format!(
            "family validation needs 4 <= n_max <= 100, got {n_max}"
        )));
    }
    let start = Instant::now();
    let mut specs = Vec::new();
    for n in 4..=n_max {
        specs.extend([
            FamilySpec::Complete(n),
            FamilySpec::Cycle(n),
            FamilySpec::LinearTree(n),
            FamilySpec::QuasiStar(n),
        ]);
        if n % 2 == 0 {
            specs.push(FamilySpec::OneRegular(n));
        }
    }
    let side = n_max.min(10);
    for n1 in 2..=side {
        for n2 in 2..=side {
            specs.push(FamilySpec::CompleteBipartite(n1, n2));
        }
    }

    let family_config = ValidationConfig {
        graphettes: false,
        brute_limit: 0,
        ..*config
    };
    let mut outcomes: Vec<Outcome> = specs
        .into_par_iter()
        .map(|spec| {
            let g = spec.generate().expect("valid family size");
            let witness = spec.label();
            let mut o = check_graph(&g, &witness, &family_config);
            let fast = o.freq;
            let closed = closed_freq(spec).expect("valid family size");
            o.check(&witness, "closed_freq_vs_fast", closed == fast, || {
                format!("closed {closed}, fast {fast}")
            });
            let cv = closed_variance(spec).expect("valid family size");
            let gv = variance_from_freq(&fast);
            o.check(&witness, "closed_variance_vs_general", cv == gv, || {
                format!("{cv} vs {gv}")
            });
            let ce = closed_expectation(spec).expect("valid family size");
            let ge = expectation_rla(&g);
            o.check(&witness, "closed_expectation_vs_general", ce == ge, || {
                format!("{ce} vs {ge}")
            });
            o
        })
        .collect();

    // Monte Carlo spot checks on the sparse families, one size each.
    let spot = n_max.min(30) & !1;
    for spec in [
        FamilySpec::Cycle(spot),
        FamilySpec::LinearTree(spot),
        FamilySpec::QuasiStar(spot),
        FamilySpec::OneRegular(spot),
    ] {
        let g = spec.generate()?;
        let witness = format!(
            "{} monte carlo T={} seed={}",
            spec.label(),
            config.samples,
            config.seed
        );
        let report = monte_carlo_moments(&g, config.samples, config.seed)?;
        let theory_var = to_f64(&closed_variance(spec)?);
        let theory_mean = to_f64(&closed_expectation(spec)?);
        let est_var = to_f64(&report.variance);
        let est_mean = to_f64(&report.mean);
        let se = (theory_var / config.samples as f64).sqrt();
        let mut o = Outcome::default();
        o.check(
            &witness,
            "monte_carlo_mean(|err|<=5se)",
            (est_mean - theory_mean).abs() <= 5.0 * se,
            || format!("{est_mean} vs {theory_mean}, se {se}"),
        );
        o.check(
            &witness,
            "monte_carlo_variance(rel<=0.05)",
            (est_var - theory_var).abs() <= 0.05 * theory_var,
            || format!("{est_var} vs {theory_var}"),
        );
        outcomes.push(o);
    }
    Ok(assemble(
        format!("families, n = 4..={n_max}"),
        start,
        outcomes,
    ))
}

/// `trials` Erdős–Rényi graphs `G(n, p)`, trial `i` seeded with `seed + i`,
/// including the graphette identities.
pub fn validate_er(
    n: usize,
    p: f64,
    trials: usize,
    seed: u64,
    config: &ValidationConfig,
) -> Result<ValidationReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in (0, 1], got {p}"
        )));
    }
    let start = Instant::now();
    let er_config = ValidationConfig {
        graphettes: true,
        ..*config
    };
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let g = erdos_renyi(n, p, s).expect("p already validated");
            check_graph(&g, &format!("er n={n} p={p} seed={s}"), &er_config)
        })
        .collect();
    Ok(assemble(
        format!("Erdos-Renyi n={n} p={p} trials={trials} seed={seed}"),
        start,
        outcomes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_reports() {
        let cfg = ValidationConfig::default();
        let r = validate_trees(5, &cfg).unwrap();
        assert!(r.success, "{:?}", r.failures);
        assert_eq!(r.graphs_checked, 125 + 16 + 3 + 1);
        let set = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(r.variances[&4], set(&["0", "2/9"]));
        assert_eq!(r.variances[&5], set(&["0", "5/6", "5/9"]));
        assert!(r.checks.iter().any(|c| c == "exhaustive_variance"));
        assert!(validate_trees(10, &cfg).is_err());
    }

    #[test]
    fn failures_flip_success() {
        let r = assemble(
            "x".into(),
            Instant::now(),
            vec![Outcome {
                failures: vec![Failure {
                    witness: "w".into(),
                    check: "c".into(),
                    detail: String::new(),
                }],
                ..Outcome::default()
            }],
        );
        assert!(!r.success);
    }

    #[test]
    fn er_battery() {
        let r = validate_er(12, 0.3, 4, 11, &ValidationConfig::default()).unwrap();
        assert!(r.success, "{:?}", r.failures);
        assert!(r.checks.iter().any(|c| c == "graphette_identities"));
        let k = validate_er(6, 1.0, 1, 0, &ValidationConfig::default()).unwrap();
        assert!(k.checks.iter().any(|c| c == "complete_graph_fixture"));
        assert!(validate_er(5, 0.0, 1, 0, &ValidationConfig::default()).is_err());
    }

    #[test]
    fn empty_graph6_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.g6");
        std::fs::write(&path, "").unwrap();
        let r = validate_graph6_corpus(&path, None, &ValidationConfig::default()).unwrap();
        assert!(r.success);
        assert_eq!(r.graphs_checked, 0);
    }
}
