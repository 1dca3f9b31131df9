//! Closed-form frequencies and moments for the special families.

use crate::error::Result;
use crate::exact::{binom, int, ratio, to_f64, Rational};
use crate::graph::FamilySpec;
use crate::product_types::{FreqVector, ProductType};

fn c(a: usize, b: i64) -> i128 {
    binom(a as i64, b) as i128
}

fn ci(a: i64, b: i64) -> i128 {
    binom(a, b) as i128
}

/// Frequencies of the cycle on `n` vertices, valid from `n = 3`.
fn cycle_freq(n: i64) -> [i128; 9] {
    let nn = n as i128;
    let f00 = 3 * nn * ci(n - 5, 3);
    assert!(f00 % 2 == 0);
    [
        f00 / 2,
        nn * (nn - 3) / 2,
        2 * nn * (nn - 4),
        nn * (nn - 4) * (nn - 5),
        if n == 4 { 2 } else { 0 },
        2 * nn,
        2 * nn * (nn - 5),
        2 * nn * (nn - 5),
        2 * nn * (nn - 5) * (nn - 6),
    ]
}

/// Distinct edges in `q1 ∪ q2` for a product of each type.
const CUT_WEIGHT: [i128; 9] = [4, 2, 3, 3, 4, 4, 4, 4, 4];

/// Cutting one edge of the cycle turns it into the path. A product of type
/// `ω` in the cycle uses `c_ω` distinct edges, so by symmetry a given edge
/// lives in a `c_ω / n` fraction of them, and those are the products lost.
fn linear_tree_freq(n: i64) -> [i128; 9] {
    if n < 3 {
        return [0; 9];
    }
    let cycle = zero_below_threshold(cycle_freq(n), n as usize);
    let nn = n as i128;
    let mut out = [0i128; 9];
    for i in 0..9 {
        let kept = cycle[i] * (nn - CUT_WEIGHT[i]);
        assert!(kept % nn == 0, "edge-occurrence counts must divide evenly");
        out[i] = kept / nn;
    }
    out
}

fn zero_below_threshold(mut f: [i128; 9], n: usize) -> [i128; 9] {
    for t in ProductType::ALL {
        if n < t.vertex_count() {
            f[t.index()] = 0;
        }
    }
    f
}

/// `f_ω` for a family instance. Every entry with fewer than `|υ_ω|`
/// vertices available is 0.
pub fn closed_freq(spec: FamilySpec) -> Result<FreqVector> {
    spec.validate()?;
    let n = spec.n();
    let raw: [i128; 9] = match spec {
        FamilySpec::OneRegular(n) => {
            let h = n / 2;
            [6 * c(h, 4), c(h, 2), 0, 6 * c(h, 3), 0, 0, 0, 0, 0]
        }
        FamilySpec::QuasiStar(n) => {
            let nn = n as i128;
            [0, nn - 3, (nn - 3) * (nn - 4), 0, 0, 0, 0, 0, 0]
        }
        FamilySpec::Complete(n) => [
            630 * c(n, 8),
            3 * c(n, 4),
            60 * c(n, 5),
            90 * c(n, 6),
            6 * c(n, 4),
            120 * c(n, 5),
            360 * c(n, 6),
            360 * c(n, 6),
            1260 * c(n, 7),
        ],
        FamilySpec::CompleteBipartite(n1, n2) => {
            let c2 = c(n1, 2) * c(n2, 2);
            let c33 = c(n1, 3) * c(n2, 3);
            let f13 = 12 * c(n1, 3) * c(n2, 2) + 12 * c(n1, 2) * c(n2, 3);
            [
                144 * c(n1, 4) * c(n2, 4),
                2 * c2,
                f13,
                36 * c33,
                2 * c2,
                f13,
                72 * c33,
                24 * c(n1, 2) * c(n2, 4) + 24 * c(n1, 4) * c(n2, 2) + 36 * c33,
                144 * c(n1, 4) * c(n2, 3) + 144 * c(n1, 3) * c(n2, 4),
            ]
        }
        FamilySpec::Cycle(n) => cycle_freq(n as i64),
        FamilySpec::LinearTree(n) => linear_tree_freq(n as i64),
        FamilySpec::Star(_) | FamilySpec::StarPlusIsolated { .. } => [0; 9],
    };
    let f = zero_below_threshold(raw, n);
    Ok(FreqVector(f.map(|x| {
        assert!(x >= 0, "closed-form frequency must be non-negative");
        x as u64
    })))
}

/// Closed-form `Var[C]` under random linear arrangements.
pub fn closed_variance(spec: FamilySpec) -> Result<Rational> {
    spec.validate()?;
    let n = spec.n() as i64;
    if n <= 3 {
        return Ok(int(0));
    }
    let v = match spec {
        FamilySpec::OneRegular(_) => ratio((n - 2) * n * (n + 6), 360),
        FamilySpec::QuasiStar(_) => ratio(n * (n - 3), 18),
        FamilySpec::Complete(_) | FamilySpec::Star(_) | FamilySpec::StarPlusIsolated { .. } => {
            int(0)
        }
        FamilySpec::CompleteBipartite(n1, n2) => {
            let (a, b) = (n1 as i64, n2 as i64);
            int(ci(a, 2) * ci(b, 2)) * int((a + b) * (a + b) + a + b) * ratio(1, 90)
        }
        FamilySpec::Cycle(_) if n == 4 => ratio(2, 9),
        FamilySpec::Cycle(_) => ratio(n * n * n, 45) + ratio(n * n, 90) - ratio(n, 3),
        FamilySpec::LinearTree(_) => {
            ratio(n * n * n, 45) - ratio(n * n, 18) - ratio(11 * n, 45) + ratio(2, 3)
        }
    };
    Ok(v)
}

/// Closed-form `E[C]` under random linear arrangements.
pub fn closed_expectation(spec: FamilySpec) -> Result<Rational> {
    spec.validate()?;
    let n = spec.n() as i64;
    let e = match spec {
        FamilySpec::OneRegular(_) => int(ci(n / 2, 2)) * ratio(1, 3),
        FamilySpec::QuasiStar(_) => ratio(n, 3) - int(1),
        FamilySpec::Complete(_) => int(ci(n, 4)),
        FamilySpec::CompleteBipartite(n1, n2) => int(c(n1, 2) * c(n2, 2)) * ratio(2, 3),
        FamilySpec::Cycle(_) => ratio(n * (n - 3), 6),
        FamilySpec::LinearTree(_) => int(ci(n - 2, 2)) * ratio(1, 3),
        FamilySpec::Star(_) | FamilySpec::StarPlusIsolated { .. } => int(0),
    };
    Ok(e)
}

/// Closed-form `|Q|`.
pub fn closed_size_q(spec: FamilySpec) -> Result<u64> {
    Ok(closed_freq(spec)?[ProductType::T24])
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Which moment a scaling fit measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Moment {
    Expectation,
    Variance,
}

/// Log-log slope of a closed-form moment over `n_min..=n_max`, skipping
/// sizes the family does not admit.
pub fn scaling_slope(
    family: crate::graph::Family,
    moment: Moment,
    n_min: usize,
    n_max: usize,
) -> Result<f64> {
    let mut points = Vec::new();
    for n in n_min..=n_max {
        let Ok(spec) = family.spec(n, None) else {
            continue;
        };
        let value = match moment {
            Moment::Expectation => closed_expectation(spec)?,
            Moment::Variance => closed_variance(spec)?,
        };
        points.push((n as f64, to_f64(&value)));
    }
    Ok(loglog_slope(&points))
}
