//! Experiment harness: convergence tables, certificate-driven runs and
//! timing comparisons between Greedy++ and the exact solver.

use std::time::Instant;

use densekit::dual::{certify, DualCertificate};
use densekit::flow::{exact_densest_with, ExactOptions, ExactResult};
use densekit::oracle::brute_force_densest_with_limit;
use densekit::peeling::{GreedyPPOptions, GreedyPPResult, GreedyPlusPlus, IterationSummary};
use densekit::{DenseError, Density, Graph, Result};

use crate::report::{BenchSummary, Certificate, ConvergenceRow, Optimum};

/// Graphs with fewer vertices than this get no timing figures.
pub const TIMING_MIN_VERTICES: usize = 50;
pub const TIMING_RUNS: usize = 5;
pub const BELOW_RESOLUTION: &str = "below timer resolution";

/// Known optimum used as the accuracy reference.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub density: Density,
    pub subset: Vec<usize>,
    pub method: &'static str,
}

impl Reference {
    pub fn to_report(&self) -> Optimum {
        Optimum {
            density: self.density.value(),
            ratio: self.density.as_ratio().map(|(a, b)| [a, b]),
            method: self.method.to_string(),
        }
    }
}

fn is_unavailable(e: &DenseError) -> bool {
    matches!(
        e,
        DenseError::Refused(_) | DenseError::CapacityOverflow | DenseError::OracleScale { .. }
    )
}

/// Optimum from the exact solver, or from enumeration when the exact solver
/// refuses and the graph is small. `None` if neither applies.
pub fn reference_optimum(
    g: &Graph,
    scale: Option<f64>,
    oracle_limit: usize,
) -> Result<Option<Reference>> {
    match exact_densest_with(g, ExactOptions { scale }) {
        Ok(r) => return Ok(Some(exact_reference(g, &r)?)),
        Err(e) if is_unavailable(&e) => {}
        Err(e) => return Err(e),
    }
    match brute_force_densest_with_limit(g, oracle_limit) {
        Ok((subset, density)) => Ok(Some(Reference {
            density,
            subset,
            method: "oracle",
        })),
        Err(e) if is_unavailable(&e) => Ok(None),
        Err(e) => Err(e),
    }
}

fn exact_reference(g: &Graph, r: &ExactResult) -> Result<Reference> {
    Ok(Reference {
        density: g.density(&r.subset)?,
        subset: r.subset.clone(),
        method: "exact",
    })
}

/// `best / opt`, exactly `1.0` when they are equal. `None` when the
/// optimum is not positive.
pub fn accuracy(best: &Density, opt: &Density) -> Option<f64> {
    if opt.value() <= 0.0 {
        return None;
    }
    if best.compare(opt).is_eq() {
        return Some(1.0);
    }
    Some(match (best.as_ratio(), opt.as_ratio()) {
        (Some((a, b)), Some((c, d))) => {
            (a as u128 * d as u128) as f64 / (b as u128 * c as u128) as f64
        }
        _ => best.value() / opt.value(),
    })
}

/// True when `best >= num/den * opt`, exactly for unweighted densities.
pub fn reaches(best: &Density, opt: &Density, num: u64, den: u64) -> bool {
    match (best.as_ratio(), opt.as_ratio()) {
        (Some((a, b)), Some((c, d))) => {
            a as u128 * d as u128 * den as u128 >= num as u128 * c as u128 * b as u128
        }
        _ => best.value() * den as f64 >= num as f64 * opt.value() * (1.0 - 1e-12),
    }
}

/// First iteration whose running best reaches `num/den` of the optimum.
pub fn iterations_to(
    history: &[IterationSummary],
    opt: &Density,
    num: u64,
    den: u64,
) -> Option<usize> {
    history
        .iter()
        .find(|s| reaches(&s.running_best, opt, num, den))
        .map(|s| s.iteration)
}

pub fn certificate_row(c: &DualCertificate) -> Certificate {
    Certificate {
        lower: c.lower,
        upper: c.upper,
        ratio: c.ratio,
        iterations: c.iterations,
    }
}

fn row(
    s: &IterationSummary,
    g: &Graph,
    rho_star: Option<&Density>,
    elapsed_ms: Option<f64>,
) -> ConvergenceRow {
    let density = s.running_best.value();
    ConvergenceRow {
        iter: s.iteration,
        density,
        accuracy: rho_star.and_then(|o| accuracy(&s.running_best, o)),
        accuracy_lower_bound: (!g.is_signed() && s.dual_upper > 0.0)
            .then(|| (density / s.dual_upper).min(1.0)),
        dual_bound: s.dual_upper,
        ms: elapsed_ms,
    }
}

/// Untimed rows for an already finished run.
pub fn rows_from_history(
    g: &Graph,
    history: &[IterationSummary],
    rho_star: Option<&Density>,
) -> Vec<ConvergenceRow> {
    history.iter().map(|s| row(s, g, rho_star, None)).collect()
}

/// Runs `iterations` Greedy++ passes and returns one row per pass.
///
/// Row `i` holds the best density over passes `1..=i`, its accuracy against
/// `rho_star` when given, and the dual bound `max load / i`. With `timing`
/// the cumulative solver time is recorded too.
pub fn convergence_report(
    g: &Graph,
    iterations: usize,
    rho_star: Option<&Density>,
    opts: GreedyPPOptions,
    timing: bool,
) -> Result<(GreedyPPResult, Vec<ConvergenceRow>)> {
    if iterations == 0 {
        return Err(DenseError::InvalidParameter(
            "need at least one iteration".into(),
        ));
    }
    let mut run = GreedyPlusPlus::new(g, opts)?;
    let mut rows = Vec::with_capacity(iterations);
    let mut spent = 0.0;
    for _ in 0..iterations {
        let start = Instant::now();
        let s = run.step().clone();
        spent += start.elapsed().as_secs_f64() * 1e3;
        rows.push(row(&s, g, rho_star, timing.then_some(spent)));
    }
    Ok((run.finish()?, rows))
}

/// Runs Greedy++ until the certificate ratio reaches `1 - delta` or `cap`
/// passes have been made.
pub fn certify_until(
    g: &Graph,
    delta: f64,
    cap: usize,
    opts: GreedyPPOptions,
) -> Result<(GreedyPPResult, DualCertificate)> {
    if !(0.0..1.0).contains(&delta) {
        return Err(DenseError::InvalidParameter(format!(
            "delta must lie in [0, 1), got {delta}"
        )));
    }
    if cap == 0 {
        return Err(DenseError::InvalidParameter(
            "iteration cap must be positive".into(),
        ));
    }
    if g.is_signed() {
        return Err(DenseError::Refused(
            "dual certificates need non-negative weights".into(),
        ));
    }
    let mut run = GreedyPlusPlus::new(g, opts)?;
    loop {
        run.step();
        let t = run.iterations();
        let best = run.best_density().expect("one pass done");
        let c = certify(&best, run.loads(), t)?;
        if c.within(delta) || t >= cap {
            return Ok((run.finish()?, c));
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub scale: Option<f64>,
    /// Pass budget for the convergence thresholds.
    pub cap: usize,
    pub greedy: GreedyPPOptions,
    /// Maximum number of solver configurations timed concurrently.
    pub threads: usize,
}

/// Reads `DENSEKIT_THREADS`; defaults to 1.
pub fn thread_cap() -> usize {
    std::env::var("DENSEKIT_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn time_ms<F: FnMut() -> Result<()>>(runs: usize, mut f: F) -> Result<f64> {
    let mut samples = Vec::with_capacity(runs);
    for _ in 0..runs {
        let start = Instant::now();
        f()?;
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(median(samples))
}

fn greedy_until(g: &Graph, opt: &Density, opts: GreedyPPOptions, cap: usize) -> Result<()> {
    let mut run = GreedyPlusPlus::new(g, opts)?;
    for _ in 0..cap {
        if reaches(&run.step().running_best, opt, 9, 10) {
            break;
        }
    }
    Ok(())
}

/// Compares the exact solver with Greedy++ run until 90% of the optimum.
///
/// Times are medians over [`TIMING_RUNS`] runs and cover solver work only.
/// When the exact solver does not apply, only the Greedy++ side is filled
/// in together with the certificate gap after `cap` passes.
/// Also returns the final Greedy++ run and the exact optimum if known.
pub fn bench(
    g: &Graph,
    cfg: &BenchConfig,
) -> Result<(BenchSummary, GreedyPPResult, Option<Reference>)> {
    let reference = match exact_densest_with(g, ExactOptions { scale: cfg.scale }) {
        Ok(r) => Some(exact_reference(g, &r)?),
        Err(e) if is_unavailable(&e) => None,
        Err(e) => return Err(e),
    };
    let mut run = GreedyPlusPlus::new(g, cfg.greedy)?;
    let mut stop_at = None;
    for _ in 0..cfg.cap.max(1) {
        let s = run.step();
        if let Some(r) = &reference {
            if stop_at.is_none() && s.running_best.compare(&r.density).is_eq() {
                stop_at = Some(s.iteration);
            }
        }
        if stop_at.is_some() {
            break;
        }
    }
    let history = run.history().to_vec();
    let result = run.finish()?;

    let mut summary = BenchSummary {
        rho_star: reference.as_ref().map(|r| r.density.value()),
        charikar_accuracy: None,
        iterations_to_90: None,
        iterations_to_99: None,
        exact_ms: None,
        greedypp_ms_to_90: None,
        speedup: None,
        timing_runs: 0,
        timing_note: None,
        certificate_gap: None,
    };
    let Some(reference) = reference else {
        if !g.is_signed() {
            let c = certify(&result.best_density, &result.final_loads, result.iterations)?;
            summary.certificate_gap = Some(1.0 - c.ratio);
        }
        return Ok((summary, result, None));
    };
    let opt = reference.density;
    summary.charikar_accuracy = accuracy(&history[0].running_best, &opt);
    summary.iterations_to_90 = iterations_to(&history, &opt, 9, 10);
    summary.iterations_to_99 = iterations_to(&history, &opt, 99, 100);

    if g.n() < TIMING_MIN_VERTICES {
        summary.timing_note = Some(BELOW_RESOLUTION.to_string());
        return Ok((summary, result, Some(reference)));
    }
    let exact = || {
        time_ms(TIMING_RUNS, || {
            exact_densest_with(g, ExactOptions { scale: cfg.scale }).map(|_| ())
        })
    };
    let greedy = || {
        time_ms(TIMING_RUNS, || {
            greedy_until(g, &opt, cfg.greedy, cfg.cap.max(1))
        })
    };
    let (exact_ms, greedy_ms) = if cfg.threads > 1 {
        std::thread::scope(|s| {
            let h = s.spawn(exact);
            let gm = greedy();
            (h.join().expect("timing thread"), gm)
        })
    } else {
        (exact(), greedy())
    };
    let (exact_ms, greedy_ms) = (exact_ms?, greedy_ms?);
    summary.exact_ms = Some(exact_ms);
    summary.greedypp_ms_to_90 = Some(greedy_ms);
    summary.speedup = (greedy_ms > 0.0).then(|| exact_ms / greedy_ms);
    summary.timing_runs = TIMING_RUNS;
    Ok((summary, result, Some(reference)))
}
