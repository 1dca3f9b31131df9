//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use crossings::arrangement::all_arrangements;
use crossings::closed_forms::{
    closed_expectation, closed_freq, closed_variance, scaling_slope, Moment,
};
use crossings::estimator::{exhaustive_moments, monte_carlo_moments};
use crossings::exact::{int, ratio, to_f64, Rational};
use crossings::graph::{erdos_renyi, Family, FamilySpec, Graph};
use crossings::moments::{
    expectation_rla, tree_variance_from_freq, variance_from_freq, RlaConstants,
};
use crossings::product_types::{
    freq_brute, freq_fast, graphette_census, FreqVector, ProductType, DEFAULT_BRUTE_LIMIT,
};
use crossings::{graph6, pruefer};
use num_traits::Signed;
use rayon::prelude::*;

struct Outcome {
    id: &'static str,
    title: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: &'static str, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    Outcome {
        id,
        title,
        ok,
        detail,
        elapsed: start.elapsed(),
    }
}

fn atlas() -> Vec<Graph> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/atlas_n1_7.g6");
    graph6::decode_all(&std::fs::read_to_string(path).expect("atlas fixture"))
        .expect("atlas decodes")
}

fn trees_up_to(n_max: usize) -> Vec<Graph> {
    (2..=n_max)
        .flat_map(|n| pruefer::all_trees(n).map(|(_, t)| t))
        .collect()
}

/// At least 50 G(n, p) graphs with n <= 20 and p in {0.1, 0.2, 0.5}.
fn er_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for (pi, &p) in [0.1, 0.2, 0.5].iter().enumerate() {
        for &n in &[8usize, 12, 16, 20] {
            for trial in 0..5u64 {
                let seed = 1000 * pi as u64 + 10 * n as u64 + trial;
                out.push((
                    format!("er(n={n},p={p},seed={seed})"),
                    erdos_renyi(n, p, seed).unwrap(),
                ));
            }
        }
    }
    out
}

fn fv(pairs: &[(ProductType, u64)]) -> FreqVector {
    let mut f = FreqVector::default();
    for &(t, v) in pairs {
        f.0[t.index()] = v;
    }
    f
}

fn ac1() -> (bool, String) {
    use ProductType::*;
    let cases: Vec<(FamilySpec, Rational, Option<FreqVector>)> = vec![
        (
            FamilySpec::LinearTree(4),
            ratio(2, 9),
            Some(fv(&[(T24, 1)])),
        ),
        (
            FamilySpec::LinearTree(5),
            ratio(5, 6),
            Some(fv(&[(T24, 3), (T13, 4), (T03, 2)])),
        ),
        (
            FamilySpec::QuasiStar(5),
            ratio(5, 9),
            Some(fv(&[(T24, 2), (T13, 2)])),
        ),
        (
            FamilySpec::LinearTree(6),
            int(2),
            Some(fv(&[
                (T24, 6),
                (T12, 6),
                (T13, 12),
                (T03, 4),
                (T021, 4),
                (T022, 4),
            ])),
        ),
        (
            FamilySpec::LinearTree(7),
            ratio(347, 90),
            Some(fv(&[
                (T24, 10),
                (T13, 24),
                (T12, 24),
                (T03, 6),
                (T021, 12),
                (T022, 12),
                (T01, 12),
            ])),
        ),
        (
            FamilySpec::Complete(4),
            int(0),
            Some(fv(&[(T24, 3), (T04, 6)])),
        ),
        (
            FamilySpec::Complete(5),
            int(0),
            Some(fv(&[(T24, 15), (T13, 60), (T04, 30), (T03, 120)])),
        ),
    ];
    let mut bad = Vec::new();
    for (spec, var, freq) in cases {
        let g = spec.generate().unwrap();
        let fast = freq_fast(&g);
        let brute = freq_brute(&g, DEFAULT_BRUTE_LIMIT).unwrap();
        let v = variance_from_freq(&fast);
        if v != var {
            bad.push(format!("{spec}: Var {v} != {var}"));
        }
        if let Some(f) = freq {
            if fast != f || brute != f {
                bad.push(format!("{spec}: fast {fast}, brute {brute}, expected {f}"));
            }
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "7 graphs".into()
        } else {
            bad.join("; ")
        },
    )
}

/// Independent crossing test: exactly one endpoint of `(c, d)` lies strictly
/// inside the span of `(a, b)`.
fn crosses(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |x: usize| lo < pos[x] && pos[x] < hi;
    inside(c) ^ inside(d)
}

fn ac2() -> (bool, String) {
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for t in ProductType::ALL {
        let (q1, q2) = t.representative();
        let n = t.vertex_count();
        let mut total = 0u64;
        let mut both = 0u64;
        for arr in all_arrangements(n) {
            let pos: Vec<usize> = (0..=n)
                .map(|v| if v == 0 { 0 } else { arr.position(v) })
                .collect();
            total += 1;
            if crosses(&pos, q1.0, q1.1) && crosses(&pos, q2.0, q2.1) {
                both += 1;
            }
        }
        let p = Rational::new(both.into(), total.into());
        summary.push(format!("{t}:{p}"));
        if p != RlaConstants::alpha(t) {
            bad.push(format!(
                "{t}: {p} over {total} != {}",
                RlaConstants::alpha(t)
            ));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            summary.join(" ")
        } else {
            bad.join("; ")
        },
    )
}

fn fast_vs_brute(label: &str, graphs: &[Graph]) -> Vec<String> {
    graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let fast = freq_fast(g);
            let brute = freq_brute(g, DEFAULT_BRUTE_LIMIT).unwrap();
            (fast != brute).then(|| format!("{label}[{i}] {g:?}: fast {fast} brute {brute}"))
        })
        .collect()
}

fn ac3() -> (bool, String) {
    let trees = trees_up_to(7);
    let er: Vec<Graph> = er_corpus().into_iter().map(|(_, g)| g).collect();
    let atlas = atlas();
    let mut bad = fast_vs_brute("tree", &trees);
    bad.extend(fast_vs_brute("er", &er));
    bad.extend(fast_vs_brute("atlas", &atlas));
    let detail = format!(
        "{} trees, {} ER graphs, {} atlas graphs",
        trees.len(),
        er.len(),
        atlas.len()
    );
    (
        bad.is_empty(),
        if bad.is_empty() {
            detail
        } else {
            bad.join("; ")
        },
    )
}

fn ac4() -> (bool, String) {
    let corpus = er_corpus();
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|(label, g)| {
            let implied = graphette_census(g).implied_freq();
            let fast = freq_fast(g);
            (implied != fast).then(|| format!("{label}: census {implied} fast {fast}"))
        })
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} ER graphs, 9 types", corpus.len())
        } else {
            bad.join("; ")
        },
    )
}

fn ac5() -> (bool, String) {
    let mut specs = Vec::new();
    for n in 4..=40 {
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
    for n1 in 2..=10 {
        for n2 in 2..=10 {
            specs.push(FamilySpec::CompleteBipartite(n1, n2));
        }
    }
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|&spec| {
            let g = spec.generate().unwrap();
            let fast = freq_fast(&g);
            let closed = closed_freq(spec).unwrap();
            let cv = closed_variance(spec).unwrap();
            let gv = variance_from_freq(&fast);
            (fast != closed || cv != gv)
                .then(|| format!("{spec}: closed {closed} / {cv}, general {fast} / {gv}"))
        })
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} family instances", specs.len())
        } else {
            bad.join("; ")
        },
    )
}

fn ac6() -> (bool, String) {
    let mut specs = Vec::new();
    for n in 4..=8 {
        specs.extend([
            FamilySpec::Complete(n),
            FamilySpec::Cycle(n),
            FamilySpec::LinearTree(n),
            FamilySpec::QuasiStar(n),
            FamilySpec::Star(n),
        ]);
        if n % 2 == 0 {
            specs.push(FamilySpec::OneRegular(n));
        }
        for n1 in 1..n {
            specs.push(FamilySpec::CompleteBipartite(n1, n - n1));
        }
        for lambda in 1..=n {
            specs.push(FamilySpec::StarPlusIsolated { lambda, n });
        }
    }
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|&spec| {
            let g = spec.generate().unwrap();
            let report = exhaustive_moments(&g, 8, false).unwrap();
            let mean = Rational::new(g.size_q().into(), 3.into());
            let var = variance_from_freq(&freq_fast(&g));
            let ok = report.mean == mean
                && report.variance == var
                && report.samples as u128 == crossings::exact::factorial(g.n())
                && closed_expectation(spec).unwrap() == mean
                && closed_variance(spec).unwrap() == var;
            (!ok).then(|| {
                format!(
                    "{spec}: population {} / {}, theory {mean} / {var}",
                    report.mean, report.variance
                )
            })
        })
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} family instances, full n! enumeration", specs.len())
        } else {
            bad.join("; ")
        },
    )
}

fn ac7() -> (bool, String) {
    const T: u64 = 100_000;
    const TOL: f64 = 0.02;
    let mut ok = true;
    let mut parts = Vec::new();
    for (spec, seed) in [
        (FamilySpec::Cycle(50), 7u64),
        (FamilySpec::LinearTree(50), 11),
    ] {
        let g = spec.generate().unwrap();
        let report = monte_carlo_moments(&g, T, seed).unwrap();
        let theory = to_f64(&closed_variance(spec).unwrap());
        let est = to_f64(&report.variance);
        let rel = (est - theory).abs() / theory;
        let mean_err = (to_f64(&report.mean) - to_f64(&expectation_rla(&g))).abs()
            / (theory / T as f64).sqrt();
        ok &= rel <= TOL && report.max_observed <= g.size_q();
        parts.push(format!("{spec} seed={seed}: Var {est:.2} vs {theory:.2} (rel {rel:.4}), mean off by {mean_err:.2} se"));
    }
    (ok, parts.join("; "))
}

fn ac8() -> Vec<Outcome> {
    let checks: [(&'static str, &'static str, Family, Moment, f64); 8] = [
        (
            "AC8a",
            "Var slope quasi_star = 2 +/- 0.1",
            Family::QuasiStar,
            Moment::Variance,
            2.0,
        ),
        (
            "AC8b",
            "Var slope one_regular = 3 +/- 0.1",
            Family::OneRegular,
            Moment::Variance,
            3.0,
        ),
        (
            "AC8c",
            "Var slope cycle = 3 +/- 0.1",
            Family::Cycle,
            Moment::Variance,
            3.0,
        ),
        (
            "AC8d",
            "Var slope linear_tree = 4 +/- 0.1",
            Family::LinearTree,
            Moment::Variance,
            4.0,
        ),
        (
            "AC8e",
            "E slope quasi_star = 1 +/- 0.1",
            Family::QuasiStar,
            Moment::Expectation,
            1.0,
        ),
        (
            "AC8f",
            "E slope one_regular = 2 +/- 0.1",
            Family::OneRegular,
            Moment::Expectation,
            2.0,
        ),
        (
            "AC8g",
            "E slope cycle = 2 +/- 0.1",
            Family::Cycle,
            Moment::Expectation,
            2.0,
        ),
        (
            "AC8h",
            "E slope linear_tree = 2 +/- 0.1",
            Family::LinearTree,
            Moment::Expectation,
            2.0,
        ),
    ];
    checks
        .into_iter()
        .map(|(id, title, family, moment, target)| {
            run(id, title, || {
                let slope = scaling_slope(family, moment, 50, 100).unwrap();
                (
                    (slope - target).abs() <= 0.1,
                    format!("slope over n in [50,100] = {slope:.4}"),
                )
            })
        })
        .collect()
}

fn ac9() -> (bool, String) {
    let mut corpus: Vec<(bool, Graph)> = trees_up_to(7).into_iter().map(|t| (true, t)).collect();
    corpus.extend(er_corpus().into_iter().map(|(_, g)| (false, g)));
    corpus.extend(atlas().into_iter().map(|g| (false, g)));
    for n in 4..=20 {
        for spec in [
            FamilySpec::Complete(n),
            FamilySpec::Cycle(n),
            FamilySpec::QuasiStar(n),
        ] {
            corpus.push((false, spec.generate().unwrap()));
        }
        corpus.push((true, FamilySpec::LinearTree(n).generate().unwrap()));
    }
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|(is_tree, g)| {
            let f = freq_fast(g);
            let q = g.size_q();
            let mut errs = Vec::new();
            if f.total() != q as u128 * q as u128 {
                errs.push("sum f != |Q|^2");
            }
            if f[ProductType::T24] != q {
                errs.push("f24 != |Q|");
            }
            if !f.parity_violations().is_empty() {
                errs.push("odd f");
            }
            if *is_tree
                && (f[ProductType::T04] != 0
                    || tree_variance_from_freq(&f) != variance_from_freq(&f))
            {
                errs.push("tree rule");
            }
            if variance_from_freq(&f).is_negative() {
                errs.push("Var < 0");
            }
            let max_c = if g.n() <= 7 {
                exhaustive_moments(g, 7, true).unwrap().max_observed
            } else {
                monte_carlo_moments(g, 200, 3).unwrap().max_observed
            };
            if max_c > q {
                errs.push("C > |Q|");
            }
            (!errs.is_empty()).then(|| format!("{g:?}: {}", errs.join(", ")))
        })
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} graphs", corpus.len())
        } else {
            bad.join("; ")
        },
    )
}

fn ac10() -> (bool, String) {
    let mut corpus = atlas();
    let n_atlas = corpus.len();
    corpus.extend(trees_up_to(7));
    let bad: Vec<String> = corpus
        .iter()
        .filter(|g| g.is_q_zero().is_some() != (g.size_q() == 0))
        .map(|g| format!("{g:?}"))
        .collect();
    let zero = corpus.iter().filter(|g| g.size_q() == 0).count();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{n_atlas} atlas graphs + {} trees, {zero} with |Q| = 0",
                corpus.len() - n_atlas
            )
        } else {
            bad.join("; ")
        },
    )
}

fn main() {
    let mut outcomes = Vec::new();
    let timed = |o: Outcome, budget: Duration| {
        if o.elapsed > budget {
            Outcome {
                ok: false,
                detail: format!("{} (over the {budget:?} budget)", o.detail),
                ..o
            }
        } else {
            o
        }
    };
    outcomes.push(timed(
        run("AC1", "golden variances and frequency vectors", ac1),
        Duration::from_secs(1),
    ));
    outcomes.push(timed(
        run("AC2", "alpha constants re-derived by enumeration", ac2),
        Duration::from_secs(5),
    ));
    outcomes.push(run("AC3", "fast frequencies equal brute force", ac3));
    outcomes.push(run("AC4", "graphette identities", ac4));
    outcomes.push(run("AC5", "closed forms equal the general path", ac5));
    outcomes.push(run(
        "AC6",
        "exhaustive moments equal theory, 4 <= n <= 8",
        ac6,
    ));
    outcomes.push(run(
        "AC7",
        "Monte Carlo variance within 2% at n = 50, T = 1e5",
        ac7,
    ));
    outcomes.extend(ac8());
    outcomes.push(run("AC9", "structural invariants", ac9));
    outcomes.push(run("AC10", "is_q_zero agrees with |Q| = 0", ac10));

    for o in &outcomes {
        println!(
            "[{}] {:<5} {} ({:.2?}): {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed,
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
