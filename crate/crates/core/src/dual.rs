//! Optimality certificates from Greedy++ loads.
//!
//! In each pass every edge charges exactly one endpoint, so the loads after
//! `T` passes divided by `T` are the vertex sums of a fractional edge
//! orientation with `f_e(u) + f_e(v) = 1`. By weak duality its maximum is an
//! upper bound on the optimal density, and any achieved density is a lower
//! bound.

use crate::error::{DenseError, Result};
use crate::graph::{Density, Graph};
use crate::peeling::{EdgeCharges, LoadVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCertificate {
    /// Achieved density.
    pub lower: f64,
    /// `max_v load_v / T`.
    pub upper: f64,
    /// `lower / upper`; `1.0` certifies optimality.
    pub ratio: f64,
    pub iterations: usize,
}

impl DualCertificate {
    /// True when `ratio >= 1 - delta`.
    pub fn within(&self, delta: f64) -> bool {
        self.ratio >= 1.0 - delta
    }
}

fn check_iterations(loads: &LoadVector, iterations: usize) -> Result<()> {
    if iterations == 0 {
        return Err(DenseError::InvalidParameter(
            "certificate needs at least one iteration".into(),
        ));
    }
    if loads.iteration != iterations {
        return Err(DenseError::InvalidParameter(format!(
            "loads come from {} iterations, not {iterations}",
            loads.iteration
        )));
    }
    Ok(())
}

/// `max_v load_v / T`, an upper bound on the optimum density.
pub fn dual_upper_bound(loads: &LoadVector, iterations: usize) -> Result<f64> {
    check_iterations(loads, iterations)?;
    Ok(loads.max() / iterations as f64)
}

/// Exact form of [`dual_upper_bound`] for unweighted loads:
/// `(max load, T)` as a ratio.
pub fn dual_upper_bound_exact(loads: &LoadVector, iterations: usize) -> Result<Option<(u64, u64)>> {
    check_iterations(loads, iterations)?;
    Ok(loads.max_exact().map(|m| (m, iterations as u64)))
}

/// Packages the weak-duality sandwich `best <= optimum <= upper`.
pub fn certify(best: &Density, loads: &LoadVector, iterations: usize) -> Result<DualCertificate> {
    let upper = dual_upper_bound(loads, iterations)?;
    let lower = best.value();
    if upper.is_nan() || upper <= 0.0 || lower < 0.0 {
        return Err(DenseError::InvalidParameter(format!(
            "inconsistent certificate inputs: lower {lower}, upper {upper}"
        )));
    }
    // Exact check where possible; float fallback for weighted loads.
    let violates = match (best.as_ratio(), loads.max_exact()) {
        (Some((a, b)), Some(mx)) => a as u128 * iterations as u128 > mx as u128 * b as u128,
        _ => lower > upper * (1.0 + 1e-9),
    };
    if violates {
        return Err(DenseError::InvalidParameter(format!(
            "achieved density {lower} exceeds dual bound {upper}; inputs are from different runs"
        )));
    }
    Ok(DualCertificate {
        lower,
        upper,
        ratio: (lower / upper).min(1.0),
        iterations,
    })
}

/// Averaged edge orientation `f_e(u) = count / T` reconstructed from
/// recorded charges.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedDual {
    /// `[f_e(e.u), f_e(e.v)]` per edge.
    pub f: Vec<[f64; 2]>,
    /// Per-vertex weighted sums of `f`.
    pub loads: Vec<f64>,
}

/// Rebuilds the averaged dual point from per-edge charge counts.
pub fn reconstruct_dual(
    g: &Graph,
    charges: &EdgeCharges,
    iterations: usize,
) -> Result<AveragedDual> {
    if iterations == 0 || charges.counts.len() != g.m() {
        return Err(DenseError::InvalidParameter(
            "charge record does not match graph".into(),
        ));
    }
    let t = iterations as f64;
    let mut loads = vec![0.0; g.n()];
    let f = g
        .edges()
        .iter()
        .zip(&charges.counts)
        .map(|(e, &[cu, cv])| {
            loads[e.u] += e.w * cu as f64 / t;
            loads[e.v] += e.w * cv as f64 / t;
            [cu as f64 / t, cv as f64 / t]
        })
        .collect();
    Ok(AveragedDual { f, loads })
}
