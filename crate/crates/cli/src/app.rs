//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densekit::dual::certify;
use densekit::flow::{
    build_feasibility_network, exact_densest_with, ExactOptions, FeasibilityQuery,
};
use densekit::mwu::{mwu_solve_with, MwuOptions};
use densekit::oracle::brute_force_densest_with_limit;
use densekit::peeling::{GreedyPPOptions, TrackerKind};
use densekit::{DenseError, Density, Graph, ParseOptions};
use thiserror::Error;

use crate::harness::{
    bench, certificate_row, certify_until, convergence_report, reference_optimum,
    rows_from_history, thread_cap, BenchConfig, Reference,
};
use crate::input::{load_graph, InputError};
use crate::report::{ExperimentReport, GraphMeta, MwuSummary, SolverConfig, SolverResult};

#[derive(Debug, Parser)]
#[command(
    name = "densekit",
    version,
    about = "Densest subgraph solvers and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tracker {
    Auto,
    Bucket,
    Heap,
}

impl From<Tracker> for TrackerKind {
    fn from(t: Tracker) -> TrackerKind {
        match t {
            Tracker::Auto => TrackerKind::Auto,
            Tracker::Bucket => TrackerKind::Bucket,
            Tracker::Heap => TrackerKind::Heap,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Edge-list file, or a generator spec such as gen:er:30:0.2
    input: String,
    /// Read a third column as the edge weight
    #[arg(long)]
    weighted: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for generator inputs
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record solver wall time (makes output non-reproducible)
    #[arg(long)]
    timing: bool,
    /// Lines starting with this prefix are skipped
    #[arg(long, default_value = "#")]
    comment: String,
    #[arg(long, value_enum, default_value_t = Tracker::Auto)]
    tracker: Tracker,
    /// Factor turning real weights into integers for the exact solver
    #[arg(long)]
    scale: Option<f64>,
    /// Largest n the exhaustive oracle accepts
    #[arg(long, default_value_t = 20)]
    oracle_limit: usize,
    /// Do not compute the optimum for accuracy columns
    #[arg(long)]
    no_optimum: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Charikar's greedy peeling
    Peel(Common),
    /// Greedy++ with a convergence table
    Greedypp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        iters: usize,
    },
    /// Exact optimum by max-flow search
    Exact {
        #[command(flatten)]
        common: Common,
        /// Write the feasibility network as DIMACS to this path
        #[arg(long)]
        dimacs: Option<PathBuf>,
        /// Density p/q of the exported network (default: the optimum)
        #[arg(long, requires = "dimacs")]
        at: Option<String>,
    },
    /// Multiplicative-weights dual solver
    Mwu {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long, default_value_t = 8.0)]
        mwu_constant: f64,
    },
    /// Greedy++ until the certificate ratio reaches 1 - delta
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        /// Iteration cap
        #[arg(long, default_value_t = 1000)]
        iters: usize,
    },
    /// Time Greedy++ to 90% of the optimum against the exact solver
    Bench {
        #[command(flatten)]
        common: Common,
        /// Pass budget for the convergence thresholds
        #[arg(long, default_value_t = 100)]
        iters: usize,
    },
    /// Exhaustive search over all subsets
    Oracle(Common),
}

#[derive(Debug, Error)]
enum Failure {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Solver(#[from] DenseError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Solver(
                DenseError::Refused(_)
                | DenseError::OracleScale { .. }
                | DenseError::CapacityOverflow,
            ) => 2,
            _ => 1,
        }
    }
}

/// Parses `argv`, runs the command and writes the report to `out`.
/// Returns the process exit status.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((report, format)) => {
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

struct Loaded {
    g: Graph,
    report: ExperimentReport,
    greedy: GreedyPPOptions,
}

fn load(common: &Common, command: &str, config: SolverConfig) -> Result<Loaded, Failure> {
    let opts = ParseOptions {
        weighted: common.weighted,
        comment_prefix: common.comment.clone(),
    };
    let g = load_graph(&common.input, &opts, common.seed)?;
    let meta = GraphMeta {
        source: common.input.clone(),
        n: g.n(),
        m: g.m(),
        weighted: g.is_weighted(),
        signed: g.is_signed(),
    };
    let config = SolverConfig {
        seed: common.seed,
        scale: common.scale,
        ..config
    };
    Ok(Loaded {
        report: ExperimentReport::new(command, meta, config),
        greedy: GreedyPPOptions {
            tracker: common.tracker.into(),
            record_charges: false,
        },
        g,
    })
}

fn labels(g: &Graph, subset: &[usize]) -> Vec<String> {
    subset.iter().map(|&v| g.label(v).to_string()).collect()
}

fn set_best(report: &mut ExperimentReport, g: &Graph, subset: &[usize], density: &Density) {
    report.best_density = Some(density.value());
    report.best_ratio = density.as_ratio().map(|(a, b)| [a, b]);
    report.best_subset = Some(labels(g, subset));
}

fn optimum(common: &Common, g: &Graph) -> Result<Option<Reference>, Failure> {
    if common.no_optimum {
        return Ok(None);
    }
    Ok(reference_optimum(g, common.scale, common.oracle_limit)?)
}

fn solver_row(
    name: &str,
    density: &Density,
    size: usize,
    iterations: Option<usize>,
    ms: Option<f64>,
) -> SolverResult {
    SolverResult {
        solver: name.to_string(),
        density: Some(density.value()),
        subset_size: Some(size),
        iterations,
        ms,
    }
}

fn elapsed_ms(start: Instant, timing: bool) -> Option<f64> {
    timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

fn parse_ratio(text: &str) -> Result<FeasibilityQuery, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "--at expects p/q with positive integers, got {text:?}"
        ))
    };
    let (p, q) = text.split_once('/').unwrap_or((text, "1"));
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    FeasibilityQuery::new(p, q).map_err(|_| bad())
}

fn execute(command: Command) -> Result<(ExperimentReport, Format), Failure> {
    match command {
        Command::Peel(common) => {
            let Loaded {
                g,
                mut report,
                greedy,
            } = load(&common, "peel", SolverConfig::default())?;
            let reference = optimum(&common, &g)?;
            let start = Instant::now();
            let (r, rows) = convergence_report(
                &g,
                1,
                reference.as_ref().map(|r| &r.density),
                greedy,
                common.timing,
            )?;
            let ms = elapsed_ms(start, common.timing);
            let subset = r.best_subset();
            set_best(&mut report, &g, &subset, &r.best_density);
            report.solvers.push(solver_row(
                "charikar",
                &r.best_density,
                subset.len(),
                Some(1),
                ms,
            ));
            if !g.is_signed() {
                let c = certify(&r.best_density, &r.final_loads, 1)?;
                report.certificate = Some(certificate_row(&c));
            }
            report.optimum = reference.map(|r| r.to_report());
            report.convergence = rows;
            Ok((report, common.format))
        }
        Command::Greedypp { common, iters } => {
            let config = SolverConfig {
                iters: Some(iters),
                ..Default::default()
            };
            let Loaded {
                g,
                mut report,
                greedy,
            } = load(&common, "greedypp", config)?;
            let reference = optimum(&common, &g)?;
            let start = Instant::now();
            let (r, rows) = convergence_report(
                &g,
                iters,
                reference.as_ref().map(|r| &r.density),
                greedy,
                common.timing,
            )?;
            let ms = elapsed_ms(start, common.timing);
            let subset = r.best_subset();
            set_best(&mut report, &g, &subset, &r.best_density);
            report.solvers.push(solver_row(
                "greedypp",
                &r.best_density,
                subset.len(),
                Some(iters),
                ms,
            ));
            if g.is_signed() {
                report
                    .notes
                    .push("no certificate: weak duality needs non-negative weights".into());
            } else {
                let c = certify(&r.best_density, &r.final_loads, iters)?;
                report.certificate = Some(certificate_row(&c));
            }
            if reference.is_none() {
                report.notes.push(
                    "optimum unknown: accuracy_lower_bound is the certified lower bound".into(),
                );
            }
            report.optimum = reference.map(|r| r.to_report());
            report.convergence = rows;
            Ok((report, common.format))
        }
        Command::Exact { common, dimacs, at } => {
            let Loaded { g, mut report, .. } = load(&common, "exact", SolverConfig::default())?;
            let start = Instant::now();
            let r = exact_densest_with(
                &g,
                ExactOptions {
                    scale: common.scale,
                },
            )?;
            let ms = elapsed_ms(start, common.timing);
            let density = g.density(&r.subset)?;
            set_best(&mut report, &g, &r.subset, &density);
            report.solvers.push(solver_row(
                "exact",
                &density,
                r.subset.len(),
                Some(r.flow_queries),
                ms,
            ));
            report.optimum = Some(
                Reference {
                    density,
                    subset: r.subset.clone(),
                    method: "exact",
                }
                .to_report(),
            );
            if let Some(path) = dimacs {
                let query = match at {
                    Some(text) => parse_ratio(&text)?,
                    None => FeasibilityQuery::new(r.ratio.0, r.ratio.1)?,
                };
                let net = build_feasibility_network(&g, query, common.scale)?;
                std::fs::write(&path, net.net.to_dimacs())?;
                report.notes.push(format!(
                    "feasibility network for D = {}/{} written as DIMACS",
                    query.p, query.q
                ));
            }
            Ok((report, common.format))
        }
        Command::Mwu {
            common,
            eps,
            max_iters,
            mwu_constant,
        } => {
            let config = SolverConfig {
                eps: Some(eps),
                iters: max_iters,
                mwu_constant: Some(mwu_constant),
                ..Default::default()
            };
            let Loaded { g, mut report, .. } = load(&common, "mwu", config)?;
            let opts = MwuOptions {
                max_iters,
                constant: mwu_constant,
                ..MwuOptions::new(eps)
            };
            let start = Instant::now();
            let r = mwu_solve_with(&g, &opts)?;
            let ms = elapsed_ms(start, common.timing);
            report.solvers.push(SolverResult {
                solver: "mwu".into(),
                density: None,
                subset_size: None,
                iterations: Some(r.iterations),
                ms,
            });
            report.mwu = Some(MwuSummary {
                eps,
                iterations: r.iterations,
                eta: r.eta,
                width: r.width,
                average_value: r.average_value,
                dual_value: r.dual_value,
            });
            report.notes.push(
                "mwu returns a fractional dual; dual_value bounds the optimum from above".into(),
            );
            Ok((report, common.format))
        }
        Command::Certify {
            common,
            delta,
            iters,
        } => {
            let config = SolverConfig {
                iters: Some(iters),
                delta: Some(delta),
                ..Default::default()
            };
            let Loaded {
                g,
                mut report,
                greedy,
            } = load(&common, "certify", config)?;
            let start = Instant::now();
            let (r, c) = certify_until(&g, delta, iters, greedy)?;
            let ms = elapsed_ms(start, common.timing);
            let subset = r.best_subset();
            set_best(&mut report, &g, &subset, &r.best_density);
            report.solvers.push(solver_row(
                "greedypp",
                &r.best_density,
                subset.len(),
                Some(r.iterations),
                ms,
            ));
            report.certificate = Some(certificate_row(&c));
            report.notes.push(if c.within(delta) {
                format!(
                    "ratio {} >= 1 - {delta} after {} iterations",
                    c.ratio, c.iterations
                )
            } else {
                format!("iteration cap {iters} reached at ratio {}", c.ratio)
            });
            report.convergence = rows_from_history(&g, &r.per_iteration, None);
            Ok((report, common.format))
        }
        Command::Bench { common, iters } => {
            let config = SolverConfig {
                iters: Some(iters),
                ..Default::default()
            };
            let Loaded {
                g,
                mut report,
                greedy,
            } = load(&common, "bench", config)?;
            let cfg = BenchConfig {
                scale: common.scale,
                cap: iters,
                greedy,
                threads: thread_cap(),
            };
            let (summary, r, reference) = bench(&g, &cfg)?;
            let subset = r.best_subset();
            set_best(&mut report, &g, &subset, &r.best_density);
            report.solvers.push(solver_row(
                "greedypp",
                &r.best_density,
                subset.len(),
                Some(r.iterations),
                None,
            ));
            report.optimum = reference.map(|r| r.to_report());
            report.bench = Some(summary);
            Ok((report, common.format))
        }
        Command::Oracle(common) => {
            let Loaded { g, mut report, .. } = load(&common, "oracle", SolverConfig::default())?;
            let start = Instant::now();
            let (subset, density) = brute_force_densest_with_limit(&g, common.oracle_limit)?;
            let ms = elapsed_ms(start, common.timing);
            set_best(&mut report, &g, &subset, &density);
            report
                .solvers
                .push(solver_row("oracle", &density, subset.len(), None, ms));
            report.optimum = Some(
                Reference {
                    density,
                    subset,
                    method: "oracle",
                }
                .to_report(),
            );
            Ok((report, common.format))
        }
    }
}
