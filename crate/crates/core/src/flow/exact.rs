//! Exact densest subgraph by rational search over load-balancing
//! feasibility networks.
//!
//! A candidate density `D = p / q` is feasible when every edge can split its
//! (scaled) weight between its endpoints so that no vertex receives more than
//! `D`. Feasibility holds exactly when the optimum is at most `D`. The network
//! is source -> vertex (capacity `p`), vertex -> incident edge (capacity
//! `q * w_e`), edge -> sink (capacity `q * w_e`); `D` is feasible iff the
//! maximum flow saturates every edge node, i.e. equals `q * w(V)`. When it is
//! infeasible, the vertices on the sink side of the minimum cut induce a
//! subgraph denser than `D`.

use crate::error::{DenseError, Result};
use crate::graph::{Density, Graph};
use crate::peeling::greedy_pp;

use super::network::{FlowNetwork, MaxFlow};
use super::push_relabel::max_flow;

/// Candidate density `p / q`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityQuery {
    pub p: u64,
    pub q: u64,
}

impl FeasibilityQuery {
    pub fn new(p: u64, q: u64) -> Result<FeasibilityQuery> {
        if q == 0 {
            return Err(DenseError::InvalidParameter("zero denominator".into()));
        }
        let g = gcd(p, q).max(1);
        Ok(FeasibilityQuery { p: p / g, q: q / g })
    }

    pub fn value(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Feasibility network with its node layout: node 0 is the source, node 1
/// the sink, then one node per vertex and one per edge.
#[derive(Debug, Clone)]
pub struct FeasibilityNetwork {
    pub net: FlowNetwork,
    pub query: FeasibilityQuery,
    /// Flow value that certifies feasibility, `q * w(V)`.
    pub required: i64,
    n: usize,
}

impl FeasibilityNetwork {
    pub fn vertex_node(&self, v: usize) -> usize {
        2 + v
    }

    pub fn edge_node(&self, e: usize) -> usize {
        2 + self.n + e
    }
}

/// Non-negative integer edge weights, optionally after multiplying by `scale`.
pub fn integer_weights(g: &Graph, scale: Option<f64>) -> Result<Vec<i64>> {
    if g.is_signed() {
        return Err(DenseError::Refused(
            "the densest subgraph problem is NP-hard on signed graphs".into(),
        ));
    }
    let factor = scale.unwrap_or(1.0);
    if !(factor.is_finite() && factor > 0.0) {
        return Err(DenseError::InvalidParameter(format!(
            "bad weight scale {factor}"
        )));
    }
    g.edges()
        .iter()
        .map(|e| {
            let x = e.w * factor;
            let r = x.round();
            if (x - r).abs() > 1e-9 * r.abs().max(1.0) {
                return Err(DenseError::Refused(format!(
                    "edge weight {} is not integral{}; declare a scaling factor",
                    e.w,
                    if scale.is_some() {
                        " after scaling"
                    } else {
                        ""
                    }
                )));
            }
            if r > i64::MAX as f64 / 4.0 {
                return Err(DenseError::CapacityOverflow);
            }
            Ok(r as i64)
        })
        .collect()
}

fn build_with_weights(
    g: &Graph,
    weights: &[i64],
    query: FeasibilityQuery,
) -> Result<FeasibilityNetwork> {
    let n = g.n();
    let m = g.m();
    let p = i64::try_from(query.p).map_err(|_| DenseError::CapacityOverflow)?;
    let q = i64::try_from(query.q).map_err(|_| DenseError::CapacityOverflow)?;
    let mut net = FlowNetwork::new(2 + n + m, 0, 1);
    let mut required: i64 = 0;
    let mut total_p: i64 = 0;
    for v in 0..n {
        net.add_arc(0, 2 + v, p)?;
        total_p = total_p.checked_add(p).ok_or(DenseError::CapacityOverflow)?;
    }
    for (id, e) in g.edges().iter().enumerate() {
        let demand = q
            .checked_mul(weights[id])
            .ok_or(DenseError::CapacityOverflow)?;
        required = required
            .checked_add(demand)
            .ok_or(DenseError::CapacityOverflow)?;
        let node = 2 + n + id;
        net.add_arc(2 + e.u, node, demand)?;
        net.add_arc(2 + e.v, node, demand)?;
        net.add_arc(node, 1, demand)?;
    }
    Ok(FeasibilityNetwork {
        net,
        query,
        required,
        n,
    })
}

/// Builds the integer-scaled feasibility network for `D = p / q`.
pub fn build_feasibility_network(
    g: &Graph,
    query: FeasibilityQuery,
    scale: Option<f64>,
) -> Result<FeasibilityNetwork> {
    let weights = integer_weights(g, scale)?;
    build_with_weights(g, &weights, query)
}

/// Result of one feasibility test.
#[derive(Debug, Clone)]
pub struct Feasibility {
    pub query: FeasibilityQuery,
    pub feasible: bool,
    pub flow: MaxFlow,
    pub required: i64,
    /// Vertices on the sink side of the minimum cut; non-empty and denser
    /// than the query exactly when the query is infeasible.
    pub dense_side: Vec<usize>,
}

fn test_query(g: &Graph, weights: &[i64], query: FeasibilityQuery) -> Result<Feasibility> {
    let fnet = build_with_weights(g, weights, query)?;
    let flow = max_flow(&fnet.net)?;
    let dense_side = (0..g.n())
        .filter(|&v| !flow.source_side[fnet.vertex_node(v)])
        .collect();
    Ok(Feasibility {
        query,
        feasible: flow.value == fnet.required,
        required: fnet.required,
        flow,
        dense_side,
    })
}

/// Tests whether density `p / q` is an upper bound on the optimum.
pub fn feasibility(g: &Graph, query: FeasibilityQuery, scale: Option<f64>) -> Result<Feasibility> {
    let weights = integer_weights(g, scale)?;
    test_query(g, &weights, query)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOptions {
    /// Multiplier that turns real weights into integers.
    pub scale: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub subset: Vec<usize>,
    /// Density in the graph's own weight units.
    pub density: Density,
    /// Optimum as an exact ratio of scaled integer weight to subset size.
    pub ratio: (u64, u64),
    /// Number of max-flow computations performed.
    pub flow_queries: usize,
}

/// Exact `(scaled weight, size)` density of `subset`.
fn exact_density(g: &Graph, weights: &[i64], subset: &[usize]) -> (u64, u64) {
    let mut inside = vec![false; g.n()];
    for &v in subset {
        inside[v] = true;
    }
    let w: i64 = g
        .edges()
        .iter()
        .zip(weights)
        .filter(|(e, _)| inside[e.u] && inside[e.v])
        .map(|(_, &w)| w)
        .sum();
    (w as u64, subset.len() as u64)
}

/// Exact densest subgraph via [`exact_densest_with`] with default options.
pub fn exact_densest(g: &Graph) -> Result<ExactResult> {
    exact_densest_with(g, ExactOptions::default())
}

/// Maximum-density subset and the exact optimum.
///
/// The lower end of the search interval is always the density of a known
/// subset (seeded by two Greedy++ passes, improved by cut extraction), the
/// upper end a feasible query (initially the maximum weighted degree). Each
/// time the lower end improves it is tested directly, which usually proves
/// optimality at once. Otherwise the interval is bisected until it is
/// shorter than `1 / (n (n - 1))`; distinct subset densities are at least
/// that far apart, so the known subset is then optimal.
pub fn exact_densest_with(g: &Graph, opts: ExactOptions) -> Result<ExactResult> {
    if g.m() == 0 {
        return Err(DenseError::EmptyGraph);
    }
    let weights = integer_weights(g, opts.scale)?;
    let n = g.n() as u64;

    let seed = greedy_pp(g, 2)?;
    let mut best = seed.best_subset();
    let (mut a, mut b) = exact_density(g, &weights, &best);
    let (mut hp, mut hq) = {
        let mut deg = vec![0u64; g.n()];
        for (e, &w) in g.edges().iter().zip(&weights) {
            deg[e.u] += w as u64;
            deg[e.v] += w as u64;
        }
        (deg.into_iter().max().unwrap_or(0), 1u64)
    };
    let mut queries = 0;
    let mut check_lower = true;

    loop {
        if check_lower {
            let query = FeasibilityQuery::new(a, b)?;
            let f = test_query(g, &weights, query)?;
            queries += 1;
            if f.feasible {
                break;
            }
            let (na, nb) = exact_density(g, &weights, &f.dense_side);
            debug_assert!(na as u128 * b as u128 > a as u128 * nb as u128);
            best = f.dense_side;
            (a, b) = (na, nb);
            check_lower = false;
        }
        // Stop once hi - lo < 1 / (n (n - 1)).
        let gap_num = hp as u128 * b as u128 - a as u128 * hq as u128;
        let gap_den = hq as u128 * b as u128;
        if gap_num * (n as u128) * (n as u128 - 1) < gap_den {
            break;
        }
        // Smallest power-of-two denominator leaving room for a grid point
        // strictly inside (lo, hi).
        let mut q: u128 = 1;
        while gap_num * q < 2 * gap_den {
            q *= 2;
        }
        let mid = (a as u128 * hq as u128 + hp as u128 * b as u128) * q / (2 * gap_den);
        let p = u64::try_from(mid).map_err(|_| DenseError::CapacityOverflow)?;
        let q = u64::try_from(q).map_err(|_| DenseError::CapacityOverflow)?;
        let query = FeasibilityQuery::new(p, q)?;
        let f = test_query(g, &weights, query)?;
        queries += 1;
        if f.feasible {
            (hp, hq) = (query.p, query.q);
        } else {
            let (na, nb) = exact_density(g, &weights, &f.dense_side);
            debug_assert!(na as u128 * query.q as u128 > query.p as u128 * nb as u128);
            best = f.dense_side;
            (a, b) = (na, nb);
            check_lower = true;
        }
    }

    best.sort_unstable();
    let density = g.density(&best)?;
    let g_ab = gcd(a, b).max(1);
    Ok(ExactResult {
        subset: best,
        density,
        ratio: (a / g_ab, b / g_ab),
        flow_queries: queries,
    })
}
