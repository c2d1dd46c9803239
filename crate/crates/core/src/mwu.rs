//! Multiplicative-weights solver for the max-min form of the densest
//! subgraph dual.
//!
//! The outer player keeps a distribution `x` over vertices; the inner
//! oracle orients every edge toward its endpoint with smaller `x`. Vertices
//! that keep receiving load gain weight, which pushes later orientations
//! away from them. The average of the oracle orientations is a feasible
//! dual point whose maximum load converges to the optimum density.

use crate::error::{DenseError, Result};
use crate::graph::Graph;

/// Fractional edge orientation with per-vertex load sums.
#[derive(Debug, Clone, PartialEq)]
pub struct DualAssignment {
    /// `[f_e(e.u), f_e(e.v)]` per edge.
    pub f: Vec<[f64; 2]>,
    /// `sum_e w_e f_e(v)` per vertex.
    pub loads: Vec<f64>,
}

impl DualAssignment {
    pub fn max_load(&self) -> f64 {
        self.loads.iter().copied().fold(0.0, f64::max)
    }
}

fn prefers_u(xu: f64, xv: f64) -> bool {
    // Edges are stored with u < v, so ties go to the smaller id.
    xu <= xv
}

/// Inner minimization: each edge puts its full unit on the endpoint with
/// the smaller `x`. Returns the 0/1 assignment and `C(x) = sum_e w_e min(x_u, x_v)`.
pub fn oracle_min(g: &Graph, x: &[f64]) -> Result<(DualAssignment, f64)> {
    if x.len() != g.n() {
        return Err(DenseError::InvalidParameter(format!(
            "point has {} entries for {} vertices",
            x.len(),
            g.n()
        )));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(DenseError::InvalidParameter(format!(
            "invalid simplex entry {bad}"
        )));
    }
    let mut loads = vec![0.0; g.n()];
    let mut cost = 0.0;
    let f = g
        .edges()
        .iter()
        .map(|e| {
            if prefers_u(x[e.u], x[e.v]) {
                loads[e.u] += e.w;
                cost += e.w * x[e.u];
                [1.0, 0.0]
            } else {
                loads[e.v] += e.w;
                cost += e.w * x[e.v];
                [0.0, 1.0]
            }
        })
        .collect();
    Ok((DualAssignment { f, loads }, cost))
}

#[derive(Debug, Clone, Copy)]
pub struct MwuOptions {
    pub eps: f64,
    /// Upper cap on rounds; the default count is `ceil(c * W * ln n / eps^2)`.
    pub max_iters: Option<usize>,
    /// The constant `c` above.
    pub constant: f64,
    /// Record `C(x)` for every round.
    pub record_rounds: bool,
}

impl MwuOptions {
    pub fn new(eps: f64) -> MwuOptions {
        MwuOptions {
            eps,
            max_iters: None,
            constant: 8.0,
            record_rounds: false,
        }
    }
}

/// Weights, step size and running sums of a solver run.
#[derive(Debug, Clone)]
pub struct MwuState {
    pub weights: Vec<f64>,
    pub eta: f64,
    pub round: usize,
    /// Sum of `C(x)` over completed rounds.
    pub value_sum: f64,
    /// Per edge, how many rounds assigned it to `e.u`.
    pub to_u: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct MwuResult {
    /// `(1/T) sum_t C(x_t)`, never above the optimum.
    pub average_value: f64,
    /// Maximum load of the averaged assignment, never below the optimum.
    pub dual_value: f64,
    pub assignment: DualAssignment,
    pub iterations: usize,
    pub eta: f64,
    /// Width used for the step size: the maximum (weighted) degree.
    pub width: f64,
    /// Largest per-round vertex load produced by the oracle.
    pub max_round_load: f64,
    /// `C(x_t)` per round when recording was requested.
    pub round_values: Option<Vec<f64>>,
}

const RENORMALIZE_EVERY: usize = 64;

/// Number of rounds for the given width, vertex count and accuracy.
pub fn round_budget(width: f64, n: usize, eps: f64, constant: f64) -> usize {
    let raw = (constant * width * (n as f64).ln() / (eps * eps)).ceil();
    (raw as usize).max(1)
}

pub fn mwu_solve(g: &Graph, eps: f64, max_iters: Option<usize>) -> Result<MwuResult> {
    mwu_solve_with(
        g,
        &MwuOptions {
            max_iters,
            ..MwuOptions::new(eps)
        },
    )
}

pub fn mwu_solve_with(g: &Graph, opts: &MwuOptions) -> Result<MwuResult> {
    let eps = opts.eps;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(DenseError::InvalidParameter(format!(
            "eps must lie in (0,1), got {eps}"
        )));
    }
    if opts.constant.is_nan() || opts.constant <= 0.0 {
        return Err(DenseError::InvalidParameter(
            "round constant must be positive".into(),
        ));
    }
    if g.m() == 0 {
        return Err(DenseError::EmptyGraph);
    }
    if g.is_signed() {
        return Err(DenseError::Refused(
            "multiplicative weights need non-negative edge weights".into(),
        ));
    }
    let n = g.n();
    let width = if g.is_weighted() {
        g.max_weighted_degree()
    } else {
        g.max_degree() as f64
    };
    let eta = eps / (2.0 * width);
    let mut rounds = round_budget(width, n, eps, opts.constant);
    if let Some(cap) = opts.max_iters {
        if cap == 0 {
            return Err(DenseError::InvalidParameter(
                "max_iters must be positive".into(),
            ));
        }
        rounds = rounds.min(cap);
    }

    let mut state = MwuState {
        weights: vec![1.0; n],
        eta,
        round: 0,
        value_sum: 0.0,
        to_u: vec![0; g.m()],
    };
    let mut x = vec![0.0; n];
    let mut round_load = vec![0.0; n];
    let mut max_round_load: f64 = 0.0;
    let mut round_values = opts.record_rounds.then(|| Vec::with_capacity(rounds));

    for _ in 0..rounds {
        let total: f64 = state.weights.iter().sum();
        for (xi, wi) in x.iter_mut().zip(&state.weights) {
            *xi = wi / total;
        }
        round_load.iter_mut().for_each(|l| *l = 0.0);
        let mut cost = 0.0;
        for (id, e) in g.edges().iter().enumerate() {
            if prefers_u(x[e.u], x[e.v]) {
                round_load[e.u] += e.w;
                cost += e.w * x[e.u];
                state.to_u[id] += 1;
            } else {
                round_load[e.v] += e.w;
                cost += e.w * x[e.v];
            }
        }
        for (w, &l) in state.weights.iter_mut().zip(&round_load) {
            *w *= 1.0 + eta * l;
            max_round_load = max_round_load.max(l);
        }
        state.value_sum += cost;
        state.round += 1;
        if let Some(r) = round_values.as_mut() {
            r.push(cost);
        }
        if state.round.is_multiple_of(RENORMALIZE_EVERY) {
            let top = state.weights.iter().copied().fold(0.0, f64::max);
            state.weights.iter_mut().for_each(|w| *w /= top);
        }
    }

    let t = state.round as f64;
    let mut loads = vec![0.0; n];
    let f = g
        .edges()
        .iter()
        .zip(&state.to_u)
        .map(|(e, &cu)| {
            let cv = state.round as u64 - cu;
            loads[e.u] += e.w * cu as f64 / t;
            loads[e.v] += e.w * cv as f64 / t;
            [cu as f64 / t, cv as f64 / t]
        })
        .collect();
    let assignment = DualAssignment { f, loads };
    Ok(MwuResult {
        average_value: state.value_sum / t,
        dual_value: assignment.max_load(),
        assignment,
        iterations: state.round,
        eta,
        width,
        max_round_load,
        round_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, star};

    #[test]
    fn oracle_triangle_uniform() {
        let (a, c) = oracle_min(&complete(3), &[1.0 / 3.0; 3]).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        assert_eq!(a.loads, vec![2.0, 1.0, 0.0]);
    }

    #[test]
    fn oracle_star_assigns_leaves() {
        let (a, c) = oracle_min(&star(3), &[0.4, 0.2, 0.2, 0.2]).unwrap();
        assert!((c - 0.6).abs() < 1e-12);
        assert_eq!(a.loads, vec![0.0, 1.0, 1.0, 1.0]);
        assert!(a.f.iter().all(|f| *f == [0.0, 1.0]));
    }

    #[test]
    fn oracle_zero_point_and_errors() {
        let g = complete(3);
        let (_, c) = oracle_min(&g, &[0.0; 3]).unwrap();
        assert_eq!(c, 0.0);
        assert!(oracle_min(&g, &[-0.1, 0.5, 0.5]).is_err());
        assert!(oracle_min(&g, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn triangle_step_size_and_bound() {
        let r = mwu_solve(&complete(3), 0.1, None).unwrap();
        assert_eq!(r.eta, 0.025);
        assert!(
            r.dual_value >= 1.0 - 1e-12 && r.dual_value <= 1.1,
            "{}",
            r.dual_value
        );
        assert!(r.average_value <= 1.0 + 1e-12);
    }

    #[test]
    fn k4_bound() {
        let r = mwu_solve(&complete(4), 0.1, None).unwrap();
        assert!(
            r.dual_value >= 1.5 - 1e-12 && r.dual_value <= 1.65,
            "{}",
            r.dual_value
        );
    }

    #[test]
    fn parameter_errors() {
        let g = complete(3);
        assert!(mwu_solve(&g, 0.0, None).is_err());
        assert!(mwu_solve(&g, 1.0, None).is_err());
        let empty = Graph::unweighted(1, []).unwrap();
        assert_eq!(
            mwu_solve(&empty, 0.1, None).unwrap_err(),
            DenseError::EmptyGraph
        );
    }

    #[test]
    fn budget_formula() {
        // 8 * 2 * ln 3 / 0.01 = 1757.7...
        assert_eq!(round_budget(2.0, 3, 0.1, 8.0), 1758);
        let r = mwu_solve(&complete(3), 0.1, Some(10)).unwrap();
        assert_eq!(r.iterations, 10);
    }
}
