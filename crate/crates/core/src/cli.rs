//! Command-line front end. The binary only forwards its arguments to
//! [`main_with_args`]; everything else lives here so it can be tested
//! in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arrangement::{crossings, LinearArrangement};
use crate::error::{Error, Result};
use crate::estimator::{self, EstimatorConfig, ScanMode};
use crate::exact::{decimal_string, factorial, fraction_string, ExactValue, Rational};
use crate::graph::{erdos_renyi, Family, FamilySpec, Graph};
use crate::graph6;
use crate::moments::{chebyshev_from_moments, expectation_rla, variance_from_freq, z_from_moments};
use crate::product_types::{freq_fast, FreqVector, DEFAULT_BRUTE_LIMIT};
use crate::validation::{self, ValidationConfig, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "crossings",
    version,
    about = "Exact moments of edge crossings in random linear arrangements"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub out: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print |Q|, E[C], Var[C] and the product-type frequencies of a graph.
    Analyze(GraphArgs),
    /// Write a family member or an Erdős–Rényi graph.
    Generate(GenerateArgs),
    /// Estimate E[C] and Var[C] by enumeration or sampling.
    Estimate(EstimateArgs),
    /// z-score and Chebyshev bound for an observed crossing count.
    Ztest(ZtestArgs),
    /// Run a validation suite.
    #[command(subcommand)]
    Validate(ValidateCommand),
    /// Theory (and estimates) for a family over a range of sizes.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    /// First part size for complete_bipartite, star size for star_plus_isolated.
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    /// Edge-list file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// graph6 file; the graph is taken from `--record`.
    #[arg(long)]
    pub graph6: Option<PathBuf>,
    /// 1-based record number within the graph6 file.
    #[arg(long, default_value_t = 1)]
    pub record: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    /// Edge probability; generates G(n, p) instead of a family member.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, env = "CROSSINGS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
    pub format: GraphFormat,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = estimator::DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, env = "CROSSINGS_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest n enumerated exhaustively.
    #[arg(long, default_value_t = estimator::DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ZtestArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Arrangement file: one line with the position of each vertex.
    #[arg(long, conflicts_with = "observed")]
    pub arrangement: Option<PathBuf>,
    /// Observed crossing count.
    #[arg(long)]
    pub observed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 8)]
    pub exhaustive_limit: usize,
    #[arg(long, default_value_t = DEFAULT_BRUTE_LIMIT)]
    pub brute_limit: u64,
    #[arg(long, default_value_t = 20_000)]
    pub samples: u64,
    #[arg(long, env = "CROSSINGS_SEED", default_value_t = 1)]
    pub seed: u64,
}

impl SuiteArgs {
    fn config(&self) -> ValidationConfig {
        ValidationConfig {
            exhaustive_limit: self.exhaustive_limit,
            brute_limit: self.brute_limit,
            graphettes: false,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ValidateCommand {
    /// All labeled trees up to --nmax vertices.
    Trees {
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Closed forms against the general path for every family.
    Families {
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Erdős–Rényi ensemble.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Every graph in a graph6 file.
    Graph6 {
        #[arg(long)]
        graph6: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        suite: SuiteArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value_t = 4)]
    pub nmin: usize,
    #[arg(long)]
    pub nmax: usize,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long, default_value_t = estimator::DEFAULT_SAMPLES)]
    pub samples: u64,
    #[arg(long, env = "CROSSINGS_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = estimator::DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: usize,
    /// Skip the empirical columns.
    #[arg(long)]
    pub theory_only: bool,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// What a command produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first), runs the command and returns its
/// output. Nothing is printed.
pub fn run_with_args<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output {
                    stdout: text,
                    ..Output::default()
                }
            } else {
                Output {
                    stderr: text,
                    code,
                    ..Output::default()
                }
            };
        }
    };
    run(&cli)
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run_with_args(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

pub fn run(cli: &Cli) -> Output {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            return Output {
                stderr: format!("error: {e}\n"),
                code: EXIT_USAGE,
                ..Output::default()
            }
        }
    };
    let jobs = pool.current_num_threads();
    let mut out = Output::default();
    let result = pool.install(|| dispatch(cli, jobs, &mut out));
    if let Err(e) = result {
        let code = match e {
            Error::Parse { .. }
            | Error::Graph6Malformed { .. }
            | Error::Graph6Truncated { .. }
            | Error::InvalidArrangement(_)
            | Error::ArrangementSize { .. }
            | Error::Io(_) => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        let _ = writeln!(out.stderr, "error: {e}");
        out.code = code;
    }
    out
}

fn config_line(out: &mut Output, command: &str, jobs: usize, fields: &[(&str, String)]) {
    let mut line = format!(
        "# crossings {} command={command} jobs={jobs}",
        env!("CARGO_PKG_VERSION")
    );
    for (k, v) in fields {
        let _ = write!(line, " {k}={v}");
    }
    line.push_str(" prng=ChaCha8(rand_chacha 0.3)");
    let _ = writeln!(out.stderr, "{line}");
}

fn dispatch(cli: &Cli, jobs: usize, out: &mut Output) -> Result<()> {
    match &cli.command {
        Command::Analyze(args) => {
            config_line(out, "analyze", jobs, &[]);
            let (label, g) = load_graph(args)?;
            out.stdout = analyze(&label, &g, cli.out);
        }
        Command::Generate(args) => {
            config_line(out, "generate", jobs, &[("seed", args.seed.to_string())]);
            let g = match args.p {
                Some(p) => {
                    let n = args
                        .n
                        .ok_or_else(|| Error::InvalidParameter("--p needs --n".into()))?;
                    erdos_renyi(n, p, args.seed)?
                }
                None => {
                    let family = args.family.ok_or_else(|| {
                        Error::InvalidParameter("generate needs --family or --p".into())
                    })?;
                    family_spec(family, args.n, args.n1, args.n2)?.generate()?
                }
            };
            out.stdout = match args.format {
                GraphFormat::EdgeList => g.to_edge_list(),
                GraphFormat::Graph6 => format!("{}\n", graph6::encode(&g)),
            };
        }
        Command::Estimate(args) => {
            config_line(
                out,
                "estimate",
                jobs,
                &[
                    ("seed", args.seed.to_string()),
                    ("samples", args.samples.to_string()),
                    ("exhaustive_limit", args.exhaustive_limit.to_string()),
                ],
            );
            let (label, g) = load_graph(args.graph_args())?;
            let config = EstimatorConfig {
                exhaustive_limit: args.exhaustive_limit,
                samples: args.samples,
                seed: args.seed,
            };
            if g.n() <= config.exhaustive_limit {
                let _ = writeln!(
                    out.stderr,
                    "# exhaustive enumeration of {}!/2 = {} arrangements, about {} crossing tests",
                    g.n(),
                    factorial(g.n()) / 2,
                    estimator::exhaustive_cost(&g) / 2
                );
            }
            let report = estimator::estimate(&g, &config)?;
            out.stdout = estimate_output(&label, &g, &report, cli.out);
        }
        Command::Ztest(args) => {
            config_line(out, "ztest", jobs, &[]);
            let (label, g) = load_graph(&args.graph)?;
            let observed = match (&args.arrangement, args.observed) {
                (Some(path), _) => {
                    let arr = LinearArrangement::parse(&std::fs::read_to_string(path)?)?;
                    crossings(&g, &arr)?
                }
                (None, Some(c)) => c,
                (None, None) => {
                    return Err(Error::InvalidParameter(
                        "ztest needs --arrangement or --observed".into(),
                    ))
                }
            };
            out.stdout = ztest_output(&label, &g, observed, cli.out);
        }
        Command::Validate(cmd) => {
            let (name, report) = match cmd {
                ValidateCommand::Trees { nmax, suite } => {
                    config_line(out, "validate trees", jobs, &suite_fields(suite));
                    ("trees", validation::validate_trees(*nmax, &suite.config())?)
                }
                ValidateCommand::Families { nmax, suite } => {
                    config_line(out, "validate families", jobs, &suite_fields(suite));
                    (
                        "families",
                        validation::validate_families(*nmax, &suite.config())?,
                    )
                }
                ValidateCommand::Er {
                    n,
                    p,
                    trials,
                    suite,
                } => {
                    config_line(out, "validate er", jobs, &suite_fields(suite));
                    (
                        "er",
                        validation::validate_er(*n, *p, *trials, suite.seed, &suite.config())?,
                    )
                }
                ValidateCommand::Graph6 {
                    graph6,
                    limit,
                    suite,
                } => {
                    config_line(out, "validate graph6", jobs, &suite_fields(suite));
                    (
                        "graph6",
                        validation::validate_graph6_corpus(graph6, *limit, &suite.config())?,
                    )
                }
            };
            out.stdout = validation_output(name, &report, cli.out);
            if !report.success {
                out.code = EXIT_VALIDATION;
            }
        }
        Command::Scan(args) => {
            config_line(
                out,
                "scan",
                jobs,
                &[
                    ("seed", args.seed.to_string()),
                    ("samples", args.samples.to_string()),
                    ("exhaustive_limit", args.exhaustive_limit.to_string()),
                ],
            );
            let config = EstimatorConfig {
                exhaustive_limit: args.exhaustive_limit,
                samples: args.samples,
                seed: args.seed,
            };
            let mode = if args.theory_only {
                ScanMode::TheoryOnly
            } else {
                ScanMode::Auto
            };
            let result =
                estimator::scan_family(args.family, args.nmin, args.nmax, args.n1, mode, &config)?;
            for d in &result.diagnostics {
                let _ = writeln!(out.stderr, "# {d}");
            }
            out.stdout = scan_output(&result.rows, cli.out)?;
        }
    }
    Ok(())
}

impl EstimateArgs {
    fn graph_args(&self) -> &GraphArgs {
        &self.graph
    }
}

fn suite_fields(s: &SuiteArgs) -> Vec<(&'static str, String)> {
    vec![
        ("seed", s.seed.to_string()),
        ("samples", s.samples.to_string()),
        ("exhaustive_limit", s.exhaustive_limit.to_string()),
        ("brute_limit", s.brute_limit.to_string()),
    ]
}

fn family_spec(
    family: Family,
    n: Option<usize>,
    n1: Option<usize>,
    n2: Option<usize>,
) -> Result<FamilySpec> {
    let n = match (family, n, n1, n2) {
        (_, Some(n), _, _) => n,
        (Family::CompleteBipartite, None, Some(a), Some(b)) => a + b,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "--family {family} needs --n"
            )))
        }
    };
    let spec = family.spec(n, n1)?;
    if let (FamilySpec::CompleteBipartite(_, got), Some(want)) = (spec, n2) {
        if got != want {
            return Err(Error::Family(format!(
                "n1 + n2 must equal n, got n2 = {want} but n - n1 = {got}"
            )));
        }
    }
    Ok(spec)
}

fn load_graph(args: &GraphArgs) -> Result<(String, Graph)> {
    match (args.family, &args.input, &args.graph6) {
        (Some(family), None, None) => {
            let spec = family_spec(family, args.n, args.n1, args.n2)?;
            Ok((spec.label(), spec.generate()?))
        }
        (None, Some(path), None) => {
            let g = Graph::parse_edge_list(&std::fs::read_to_string(path)?)?;
            Ok((path.display().to_string(), g))
        }
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let (line, code) = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .nth(args.record.saturating_sub(1))
                .ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "{} has no record {}",
                        path.display(),
                        args.record
                    ))
                })?;
            let g = graph6::decode(code.trim()).map_err(|e| Error::Parse {
                line: line + 1,
                message: e.to_string(),
            })?;
            Ok((format!("{}#{}", path.display(), args.record), g))
        }
        _ => Err(Error::InvalidParameter(
            "give exactly one of --family, --input, --graph6".into(),
        )),
    }
}

fn exact_cell(v: &Rational) -> String {
    format!("{} ({})", fraction_string(v), decimal_string(v))
}

fn freq_json(f: &FreqVector) -> serde_json::Value {
    serde_json::to_value(f).expect("frequencies serialize")
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn analyze(label: &str, g: &Graph, format: OutputFormat) -> String {
    let freq = freq_fast(g);
    let mean = expectation_rla(g);
    let variance = variance_from_freq(&freq);
    let k2 = g.degree_stats().second_moment;
    let q_zero = g.is_q_zero();
    match format {
        OutputFormat::Table => {
            let mut rows = vec![
                ("graph".to_string(), label.to_string()),
                ("n".into(), g.n().to_string()),
                ("m".into(), g.m().to_string()),
                ("<k^2>".into(), exact_cell(&k2)),
                ("|Q|".into(), g.size_q().to_string()),
                ("E[C]".into(), exact_cell(&mean)),
                ("Var[C]".into(), exact_cell(&variance)),
            ];
            rows.extend(freq.iter().map(|(t, v)| (format!("f{t}"), v.to_string())));
            if let Some(w) = q_zero {
                rows.push(("|Q| = 0".into(), w.to_string()));
            }
            table(&rows)
        }
        OutputFormat::Json => {
            let value = json!({
                "graph": label,
                "n": g.n(),
                "m": g.m(),
                "second_moment": ExactValue::from(&k2),
                "Q": g.size_q(),
                "expectation": ExactValue::from(&mean),
                "variance": ExactValue::from(&variance),
                "frequencies": freq_json(&freq),
                "q_zero": q_zero,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
        OutputFormat::Csv => {
            let mut header: Vec<String> = ["graph", "n", "m", "second_moment", "Q", "E", "Var"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            header.extend(freq.iter().map(|(t, _)| format!("f{t}")));
            let mut row = vec![
                label.to_string(),
                g.n().to_string(),
                g.m().to_string(),
                fraction_string(&k2),
                g.size_q().to_string(),
                fraction_string(&mean),
                fraction_string(&variance),
            ];
            row.extend(freq.iter().map(|(_, v)| v.to_string()));
            csv_text(&header, &[row])
        }
    }
}

fn estimate_output(
    label: &str,
    g: &Graph,
    report: &estimator::EstimateReport,
    format: OutputFormat,
) -> String {
    let mean = expectation_rla(g);
    let variance = crate::moments::variance_rla(g);
    match format {
        OutputFormat::Table => table(&[
            ("graph".into(), label.to_string()),
            ("mode".into(), report.mode.to_string()),
            ("T".into(), report.samples.to_string()),
            (
                "seed".into(),
                report.seed.map_or("-".into(), |s| s.to_string()),
            ),
            ("E[C] estimate".into(), exact_cell(&report.mean)),
            ("E[C] theory".into(), exact_cell(&mean)),
            ("Var[C] estimate".into(), exact_cell(&report.variance)),
            ("Var[C] theory".into(), exact_cell(&variance)),
            ("max C seen".into(), report.max_observed.to_string()),
        ]),
        OutputFormat::Json => {
            let value = json!({
                "graph": label,
                "report": report,
                "theory": { "expectation": ExactValue::from(&mean), "variance": ExactValue::from(&variance) },
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
        OutputFormat::Csv => {
            let header: Vec<String> = [
                "graph",
                "mode",
                "T",
                "seed",
                "E_est",
                "E_theory",
                "Var_est",
                "Var_theory",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let row = vec![
                label.to_string(),
                report.mode.to_string(),
                report.samples.to_string(),
                report.seed.map_or(String::new(), |s| s.to_string()),
                fraction_string(&report.mean),
                fraction_string(&mean),
                fraction_string(&report.variance),
                fraction_string(&variance),
            ];
            csv_text(&header, &[row])
        }
    }
}

fn ztest_output(label: &str, g: &Graph, observed: u64, format: OutputFormat) -> String {
    let mean = expectation_rla(g);
    let variance = crate::moments::variance_rla(g);
    let bound = chebyshev_from_moments(&mean, &variance, observed);
    let z = z_from_moments(&mean, &variance, observed);
    let degenerate = "Var[C] = 0: C is the same in every arrangement, no z-score exists";
    match format {
        OutputFormat::Table => {
            let mut rows = vec![
                ("graph".to_string(), label.to_string()),
                ("C".into(), observed.to_string()),
                ("E[C]".into(), exact_cell(&mean)),
                ("Var[C]".into(), exact_cell(&variance)),
            ];
            match &z {
                Ok(z) => rows.push(("z".into(), format!("{z:.12}"))),
                Err(_) => rows.push(("z".into(), degenerate.into())),
            }
            rows.push(("Chebyshev bound".into(), exact_cell(&bound)));
            table(&rows)
        }
        OutputFormat::Json => {
            let value = json!({
                "graph": label,
                "observed": observed,
                "expectation": ExactValue::from(&mean),
                "variance": ExactValue::from(&variance),
                "z": z.as_ref().ok(),
                "degenerate": z.is_err(),
                "chebyshev_bound": ExactValue::from(&bound),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
        OutputFormat::Csv => {
            let header: Vec<String> = ["graph", "C", "E", "Var", "z", "chebyshev_bound"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let row = vec![
                label.to_string(),
                observed.to_string(),
                fraction_string(&mean),
                fraction_string(&variance),
                z.map_or(String::new(), |z| format!("{z:.12}")),
                fraction_string(&bound),
            ];
            csv_text(&header, &[row])
        }
    }
}

fn validation_output(name: &str, report: &ValidationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{}\n", report.to_json()),
        OutputFormat::Csv => {
            let header: Vec<String> = ["witness", "check", "detail"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let rows: Vec<Vec<String>> = report
                .failures
                .iter()
                .map(|f| vec![f.witness.clone(), f.check.clone(), f.detail.clone()])
                .collect();
            csv_text(&header, &rows)
        }
        OutputFormat::Table => {
            let mut s = table(&[
                ("suite".into(), name.to_string()),
                ("corpus".into(), report.corpus.clone()),
                ("graphs".into(), report.graphs_checked.to_string()),
                ("checks".into(), report.checks.join(", ")),
                ("failures".into(), report.failures.len().to_string()),
                ("elapsed".into(), format!("{:.3} s", report.elapsed_secs)),
                (
                    "result".into(),
                    if report.success {
                        "ok".into()
                    } else {
                        "FAILED".into()
                    },
                ),
            ]);
            for f in report.failures.iter().take(20) {
                let _ = writeln!(s, "  {} [{}] {}", f.witness, f.check, f.detail);
            }
            if report.failures.len() > 20 {
                let _ = writeln!(s, "  ... {} more", report.failures.len() - 20);
            }
            s
        }
    }
}

fn scan_output(rows: &[estimator::ScanRow], format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Csv => estimator::scan_to_csv(rows)?,
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(rows).expect("json")),
        OutputFormat::Table => {
            let dec = |v: &Option<Rational>| v.as_ref().map_or("-".to_string(), decimal_string);
            let mut s = format!(
                "{:<28} {:>5} {:>12} {:>16} {:>16} {:>16} {:>16} {:>12}\n",
                "family", "n", "Q", "E_theory", "Var_theory", "E_est", "Var_est", "mode"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:<28} {:>5} {:>12} {:>16} {:>16} {:>16} {:>16} {:>12}",
                    r.family,
                    r.n,
                    r.q,
                    decimal_string(&r.e_theory),
                    decimal_string(&r.var_theory),
                    dec(&r.e_est),
                    dec(&r.var_est),
                    r.mode
                );
            }
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Output {
        run_with_args(std::iter::once("crossings").chain(args.iter().copied()))
    }

    #[test]
    fn analyze_families() {
        let out = run(&["analyze", "--family", "linear_tree", "--n", "7"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("347/90"));
        let out = run(&["analyze", "--family", "cycle", "--n", "4", "--out", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["variance"]["exact"], "2/9");
        assert!(out.stderr.starts_with("# crossings"));
    }

    #[test]
    fn analyze_edge_list_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("paw.txt");
        std::fs::write(&path, "4 4\n1 2\n2 3\n1 3\n3 4\n").unwrap();
        let out = run(&["analyze", "--input", path.to_str().unwrap(), "--out", "csv"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let mut reader = csv::Reader::from_reader(out.stdout.as_bytes());
        let row = reader.records().next().unwrap().unwrap();
        assert_eq!(&row[4], "1");

        std::fs::write(&path, "4 2\n1 2\n2 z\n").unwrap();
        let out = run(&["analyze", "--input", path.to_str().unwrap()]);
        assert_eq!(out.code, EXIT_PARSE);
        assert!(out.stderr.contains("line 3"));
    }

    #[test]
    fn ztest_cases() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("arr.txt");
        std::fs::write(&path, "1 5 2 6 3 7 4 8\n").unwrap();
        let out = run(&[
            "ztest",
            "--family",
            "one_regular",
            "--n",
            "8",
            "--arrangement",
            path.to_str().unwrap(),
            "--out",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["observed"], 6);
        let out = run(&[
            "ztest",
            "--family",
            "linear_tree",
            "--n",
            "5",
            "--observed",
            "1",
            "--out",
            "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["z"], 0.0);
        let out = run(&["ztest", "--family", "star", "--n", "6", "--observed", "0"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("Var[C] = 0"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(
            run(&["analyze", "--family", "nope", "--n", "3"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["analyze", "--family", "one_regular", "--n", "7"]).code,
            EXIT_USAGE
        );
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(&["analyze"]).code, EXIT_USAGE);
    }

    #[test]
    fn scan_and_validate() {
        let out = run(&[
            "scan",
            "--family",
            "quasi_star",
            "--nmax",
            "100",
            "--theory-only",
            "--out",
            "csv",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let rows = estimator::scan_from_csv(&out.stdout).unwrap();
        assert_eq!(rows.len(), 97);
        assert_eq!(estimator::scan_to_csv(&rows).unwrap(), out.stdout);
        let out = run(&["validate", "trees", "--nmax", "6"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
    }

    #[test]
    fn estimate_is_reproducible() {
        let args = [
            "estimate",
            "--family",
            "cycle",
            "--n",
            "30",
            "--samples",
            "5000",
            "--seed",
            "7",
            "--out",
            "json",
        ];
        let a = run(&args);
        let b = run(&["--jobs", "1"]
            .iter()
            .chain(args.iter())
            .copied()
            .collect::<Vec<_>>());
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }

    #[test]
    fn generate_round_trip() {
        let out = run(&[
            "generate",
            "--family",
            "complete_bipartite",
            "--n1",
            "2",
            "--n2",
            "3",
            "--format",
            "graph6",
        ]);
        let g = graph6::decode(out.stdout.trim()).unwrap();
        assert_eq!(g, FamilySpec::CompleteBipartite(2, 3).generate().unwrap());
        let out = run(&["generate", "--n", "10", "--p", "0.5", "--seed", "3"]);
        assert_eq!(
            Graph::parse_edge_list(&out.stdout).unwrap(),
            erdos_renyi(10, 0.5, 3).unwrap()
        );
    }
}
