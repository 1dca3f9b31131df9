//! Empirical moments of the crossing count: exhaustive enumeration of all
//! `n!` arrangements, or Monte Carlo sampling.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{next_permutation, CrossingCounter};
use crate::closed_forms::{closed_expectation, closed_variance};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, rational_str, rational_str_opt, Rational};
use crate::graph::{Family, FamilySpec, Graph};

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 10;
pub const DEFAULT_SAMPLES: u64 = 100_000;
/// Samples drawn from each derived random stream.
pub const CHUNK_SIZE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    Exhaustive,
    MonteCarlo,
}

impl fmt::Display for EstimateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimateMode::Exhaustive => "exhaustive",
            EstimateMode::MonteCarlo => "monte_carlo",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateReport {
    #[serde(with = "rational_str")]
    pub mean: Rational,
    /// Population variance in exhaustive mode, unbiased sample variance
    /// (divisor `T − 1`) in Monte Carlo mode.
    #[serde(with = "rational_str")]
    pub variance: Rational,
    pub mode: EstimateMode,
    pub samples: u64,
    pub seed: Option<u64>,
    pub exact: bool,
    pub sum_c: u128,
    pub sum_c2: u128,
    pub max_observed: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Sums {
    count: u64,
    sum: u128,
    sum2: u128,
    max: u64,
}

impl Sums {
    fn push(&mut self, c: u64) {
        self.count += 1;
        self.sum += c as u128;
        self.sum2 += (c as u128) * (c as u128);
        self.max = self.max.max(c);
    }

    fn merge(self, o: Sums) -> Sums {
        Sums {
            count: self.count + o.count,
            sum: self.sum + o.sum,
            sum2: self.sum2 + o.sum2,
            max: self.max.max(o.max),
        }
    }
}

/// Refuses enumeration above `limit` vertices.
pub fn check_exhaustive_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::ExhaustiveLimit {
            n,
            limit,
            factorial: factorial(n),
        });
    }
    Ok(())
}

/// Crossing evaluations needed for a full enumeration, `n! · |Q|`.
pub fn exhaustive_cost(g: &Graph) -> u128 {
    factorial(g.n()) * g.size_q() as u128
}

/// Population mean and variance over all `n!` arrangements.
///
/// With `mirror` set, only arrangements whose first vertex is smaller than
/// their last are visited and every value counts twice; reversing an
/// arrangement never changes its crossings.
pub fn exhaustive_moments(g: &Graph, limit: usize, mirror: bool) -> Result<EstimateReport> {
    let n = g.n();
    check_exhaustive_limit(n, limit)?;
    let counter = CrossingCounter::new(g);

    let sums = if n < 2 {
        let mut s = Sums::default();
        s.push(0);
        s
    } else {
        let mirror_factor = if mirror { 2 } else { 1 };
        let s = (1..=n)
            .into_par_iter()
            .map(|first| {
                let mut sums = Sums::default();
                let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
                let mut position = vec![0usize; n + 1];
                position[first] = 1;
                loop {
                    if !mirror || rest[n - 2] > first {
                        for (i, &v) in rest.iter().enumerate() {
                            position[v] = i + 2;
                        }
                        sums.push(counter.count_positions(&position));
                    }
                    if !next_permutation(&mut rest) {
                        break;
                    }
                }
                sums
            })
            .reduce(Sums::default, Sums::merge);
        Sums {
            count: s.count * mirror_factor,
            sum: s.sum * mirror_factor as u128,
            sum2: s.sum2 * mirror_factor as u128,
            max: s.max,
        }
    };

    let total = int(sums.count);
    let mean = int(sums.sum) / &total;
    let variance = int(sums.sum2) / &total - &mean * &mean;
    Ok(EstimateReport {
        mean,
        variance,
        mode: EstimateMode::Exhaustive,
        samples: sums.count,
        seed: None,
        exact: true,
        sum_c: sums.sum,
        sum_c2: sums.sum2,
        max_observed: sums.max,
    })
}

/// Random stream for chunk `k`: ChaCha8 seeded with `seed` via
/// `seed_from_u64`, on stream number `k`. Chunk `k` covers samples
/// `k·CHUNK_SIZE ..`, so results do not depend on the worker count.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// Sample mean and unbiased sample variance of `C` over `samples`
/// uniformly random arrangements.
pub fn monte_carlo_moments(g: &Graph, samples: u64, seed: u64) -> Result<EstimateReport> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo needs at least 2 samples, got {samples}"
        )));
    }
    let n = g.n();
    let counter = CrossingCounter::new(g);
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let sums = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = chunk_rng(seed, k);
            let len = CHUNK_SIZE.min(samples - k * CHUNK_SIZE);
            let mut sums = Sums::default();
            let mut order = vec![0usize; n];
            let mut position = vec![0usize; n + 1];
            for _ in 0..len {
                for (i, slot) in order.iter_mut().enumerate() {
                    *slot = i + 1;
                }
                order.shuffle(&mut rng);
                for (i, &v) in order.iter().enumerate() {
                    position[v] = i + 1;
                }
                sums.push(counter.count_positions(&position));
            }
            sums
        })
        .reduce(Sums::default, Sums::merge);

    assert!(
        sums.max <= counter.size_q(),
        "a crossing count exceeded |Q|"
    );
    let t = int(sums.count);
    let mean = int(sums.sum) / &t;
    let variance = (&t * int(sums.sum2) - int(sums.sum) * int(sums.sum)) / (&t * (&t - int(1)));
    Ok(EstimateReport {
        mean,
        variance,
        mode: EstimateMode::MonteCarlo,
        samples: sums.count,
        seed: Some(seed),
        exact: false,
        sum_c: sums.sum,
        sum_c2: sums.sum2,
        max_observed: sums.max,
    })
}

/// Exhaustive enumeration up to `exhaustive_limit` vertices, sampling above.
pub fn estimate(g: &Graph, config: &EstimatorConfig) -> Result<EstimateReport> {
    if g.n() <= config.exhaustive_limit {
        exhaustive_moments(g, config.exhaustive_limit, true)
    } else {
        monte_carlo_moments(g, config.samples, config.seed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EstimatorConfig {
    pub exhaustive_limit: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Theory columns plus an estimate for every row.
    Auto,
    /// Theory columns only.
    TheoryOnly,
}

/// One CSV row of a family scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub family: String,
    pub n: usize,
    #[serde(rename = "Q")]
    pub q: u64,
    #[serde(rename = "E_theory", with = "rational_str")]
    pub e_theory: Rational,
    #[serde(rename = "Var_theory", with = "rational_str")]
    pub var_theory: Rational,
    #[serde(rename = "E_est", with = "rational_str_opt")]
    pub e_est: Option<Rational>,
    #[serde(rename = "Var_est", with = "rational_str_opt")]
    pub var_est: Option<Rational>,
    pub mode: String,
    #[serde(rename = "T")]
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// One message per skipped size.
    pub diagnostics: Vec<String>,
}

/// Theory and estimates for `family` at every `n` in `n_min..=n_max`.
/// `n1` is forwarded to [`Family::spec`].
pub fn scan_family(
    family: Family,
    n_min: usize,
    n_max: usize,
    n1: Option<usize>,
    mode: ScanMode,
    config: &EstimatorConfig,
) -> Result<ScanResult> {
    if n_min > n_max {
        return Err(Error::InvalidParameter(format!(
            "empty range {n_min}..={n_max}"
        )));
    }
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for n in n_min..=n_max {
        let spec: FamilySpec = match family.spec(n, n1) {
            Ok(spec) => spec,
            Err(e) => {
                diagnostics.push(format!("skipped n = {n}: {e}"));
                continue;
            }
        };
        let e_theory = closed_expectation(spec)?;
        let var_theory = closed_variance(spec)?;
        let q = crate::closed_forms::closed_size_q(spec)?;
        let mut row = ScanRow {
            family: spec.label(),
            n,
            q,
            e_theory,
            var_theory,
            e_est: None,
            var_est: None,
            mode: "theory".into(),
            samples: None,
            seed: None,
        };
        if mode == ScanMode::Auto {
            let report = estimate(&spec.generate()?, config)?;
            row.e_est = Some(report.mean);
            row.var_est = Some(report.variance);
            row.mode = report.mode.to_string();
            row.samples = Some(report.samples);
            row.seed = report.seed;
        }
        rows.push(row);
    }
    Ok(ScanResult { rows, diagnostics })
}

pub fn scan_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn scan_from_csv(text: &str) -> Result<Vec<ScanRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Parse {
                line: i + 2,
                message: e.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::moments::{expectation_rla, variance_rla};

    fn gen(spec: FamilySpec) -> Graph {
        spec.generate().unwrap()
    }

    #[test]
    fn exhaustive_golden() {
        let r = exhaustive_moments(&gen(FamilySpec::LinearTree(5)), 10, false).unwrap();
        assert_eq!((r.mean.clone(), r.variance.clone()), (int(1), ratio(5, 6)));
        assert_eq!(r.samples, 120);
        assert!(r.exact);
        let r = exhaustive_moments(&gen(FamilySpec::Complete(5)), 10, true).unwrap();
        assert_eq!((r.mean, r.variance), (int(5), int(0)));
        let r = exhaustive_moments(&gen(FamilySpec::QuasiStar(5)), 10, true).unwrap();
        assert_eq!(r.variance, ratio(5, 9));
    }

    #[test]
    fn mirror_pairing_is_exact() {
        for spec in [
            FamilySpec::Cycle(7),
            FamilySpec::QuasiStar(6),
            FamilySpec::CompleteBipartite(2, 4),
        ] {
            let g = gen(spec);
            let full = exhaustive_moments(&g, 10, false).unwrap();
            let half = exhaustive_moments(&g, 10, true).unwrap();
            assert_eq!(full, half);
            assert_eq!(full.mean, expectation_rla(&g));
            assert_eq!(full.variance, variance_rla(&g));
        }
    }

    #[test]
    fn exhaustive_limit() {
        let g = gen(FamilySpec::Cycle(12));
        match exhaustive_moments(&g, 10, true) {
            Err(Error::ExhaustiveLimit {
                n: 12, factorial, ..
            }) => assert_eq!(factorial, 479_001_600),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monte_carlo_determinism() {
        let g = gen(FamilySpec::Cycle(20));
        let a = monte_carlo_moments(&g, 10_000, 7).unwrap();
        let b = monte_carlo_moments(&g, 10_000, 7).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = pool.install(|| monte_carlo_moments(&g, 10_000, 7).unwrap());
        assert_eq!(a, c);
        assert_ne!(a, monte_carlo_moments(&g, 10_000, 8).unwrap());
    }

    #[test]
    fn monte_carlo_on_star() {
        let r = monte_carlo_moments(&gen(FamilySpec::Star(20)), 500, 1).unwrap();
        assert_eq!((r.mean, r.variance), (int(0), int(0)));
        assert!(monte_carlo_moments(&gen(FamilySpec::Star(5)), 1, 1).is_err());
    }

    #[test]
    fn scan_rows() {
        let cfg = EstimatorConfig {
            exhaustive_limit: 6,
            samples: 2_000,
            seed: 3,
        };
        let res = scan_family(Family::LinearTree, 4, 20, None, ScanMode::TheoryOnly, &cfg).unwrap();
        assert_eq!(res.rows.len(), 17);
        let res = scan_family(Family::OneRegular, 4, 9, None, ScanMode::Auto, &cfg).unwrap();
        assert_eq!(res.rows.len(), 3);
        assert_eq!(res.diagnostics.len(), 3);
        assert_eq!(res.rows[0].mode, "exhaustive");
        assert_eq!(res.rows[2].mode, "monte_carlo");
        let res = scan_family(Family::Cycle, 4, 4, None, ScanMode::TheoryOnly, &cfg).unwrap();
        assert_eq!(res.rows[0].var_theory, ratio(2, 9));
    }

    #[test]
    fn csv_round_trip() {
        let cfg = EstimatorConfig {
            exhaustive_limit: 6,
            samples: 1_000,
            seed: 5,
        };
        let res = scan_family(Family::Cycle, 4, 8, None, ScanMode::Auto, &cfg).unwrap();
        let text = scan_to_csv(&res.rows).unwrap();
        assert!(text.starts_with("family,n,Q,E_theory,Var_theory,E_est,Var_est,mode,T,seed\n"));
        assert_eq!(scan_from_csv(&text).unwrap(), res.rows);
    }
}
