//! Greedy peeling (Charikar) and its load-carrying iteration, Greedy++.
//!
//! A pass repeatedly removes the live vertex minimizing
//! `load + residual degree` and charges it that residual degree. With zero
//! loads this is Charikar's peeling; Greedy++ runs passes back to back,
//! carrying the accumulated loads. Unweighted loads are exact `u64`;
//! weighted loads are `f64` with residual degrees accumulated in ascending
//! edge-id order.

mod tracker;

use std::fmt::Debug;

use ordered_float::OrderedFloat;

pub use tracker::TrackerKind;
use tracker::{BucketQueue, HeapTracker, MinTracker};

use crate::error::{DenseError, Result};
use crate::graph::{Density, Graph};

/// Per-vertex loads accumulated over completed peeling passes.
#[derive(Debug, Clone, PartialEq)]
pub enum Loads {
    Exact(Vec<u64>),
    Real(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadVector {
    pub loads: Loads,
    pub iteration: usize,
}

impl LoadVector {
    /// All-zero loads matching the graph's arithmetic.
    pub fn zeros(g: &Graph) -> LoadVector {
        let loads = if g.is_weighted() {
            Loads::Real(vec![0.0; g.n()])
        } else {
            Loads::Exact(vec![0; g.n()])
        };
        LoadVector {
            loads,
            iteration: 0,
        }
    }

    pub fn len(&self) -> usize {
        match &self.loads {
            Loads::Exact(v) => v.len(),
            Loads::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, v: usize) -> f64 {
        match &self.loads {
            Loads::Exact(l) => l[v] as f64,
            Loads::Real(l) => l[v],
        }
    }

    pub fn exact(&self) -> Option<&[u64]> {
        match &self.loads {
            Loads::Exact(l) => Some(l),
            Loads::Real(_) => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..self.len()).map(|v| self.get(v)).collect()
    }

    /// Largest load, exact for unweighted loads.
    pub fn max_exact(&self) -> Option<u64> {
        self.exact().map(|l| l.iter().copied().max().unwrap_or(0))
    }

    pub fn max(&self) -> f64 {
        (0..self.len())
            .map(|v| self.get(v))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Outcome of one peeling pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PeelResult {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    /// Residual (weighted) degree charged to each vertex, in removal order.
    pub increments: Vec<f64>,
    /// The best subgraph is `order[best_start..]`.
    pub best_start: usize,
    pub best_density: Density,
    /// `density_trace[j]` is the density after `j` removals, `j < n`.
    pub density_trace: Vec<f64>,
}

impl PeelResult {
    /// Sorted vertex ids of the best suffix.
    pub fn best_subset(&self) -> Vec<usize> {
        let mut s = self.order[self.best_start..].to_vec();
        s.sort_unstable();
        s
    }
}

/// Per-edge record of which endpoint each pass charged.
///
/// `counts[e] = [charged to e.u, charged to e.v]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeCharges {
    pub counts: Vec<[u32; 2]>,
}

trait Scalar: Copy + Ord + Debug {
    const ZERO: Self;
    fn from_weight(w: f64) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn density(num: Self, size: usize) -> Density;
    fn to_f64(self) -> f64;
}

impl Scalar for u64 {
    const ZERO: u64 = 0;
    fn from_weight(_: f64) -> u64 {
        1
    }
    fn add(self, o: u64) -> u64 {
        self + o
    }
    fn sub(self, o: u64) -> u64 {
        self - o
    }
    fn density(num: u64, size: usize) -> Density {
        Density::count(num, size)
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

type F = OrderedFloat<f64>;

impl Scalar for F {
    const ZERO: F = OrderedFloat(0.0);
    fn from_weight(w: f64) -> F {
        OrderedFloat(w)
    }
    fn add(self, o: F) -> F {
        self + o
    }
    fn sub(self, o: F) -> F {
        self - o
    }
    fn density(num: F, size: usize) -> Density {
        Density::weighted(num.0, size)
    }
    fn to_f64(self) -> f64 {
        self.0
    }
}

/// One pass over `g`, updating `loads` in place.
fn pass<K: Scalar, T: MinTracker<K>>(
    g: &Graph,
    loads: &mut [K],
    mut charges: Option<&mut EdgeCharges>,
) -> PeelResult {
    let n = g.n();
    // Adjacency lists are in ascending edge-id order.
    let mut resid: Vec<K> = (0..n)
        .map(|v| {
            g.neighbors(v).iter().fold(K::ZERO, |acc, &(_, e)| {
                acc.add(K::from_weight(g.edges()[e].w))
            })
        })
        .collect();
    let mut keys: Vec<K> = (0..n).map(|v| loads[v].add(resid[v])).collect();
    let floor = loads.iter().copied().min().unwrap_or(K::ZERO);
    let mut tracker = T::build(&keys, floor);

    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut increments = Vec::with_capacity(n);
    let mut mass = g
        .edges()
        .iter()
        .fold(K::ZERO, |acc, e| acc.add(K::from_weight(e.w)));
    let mut size = n;
    let mut best = K::density(mass, size);
    let mut best_start = 0;
    let mut density_trace = Vec::with_capacity(n);
    density_trace.push(best.value());

    while let Some(u) = tracker.pop_min(&keys, &removed) {
        removed[u] = true;
        let inc = resid[u];
        loads[u] = loads[u].add(inc);
        order.push(u);
        increments.push(inc.to_f64());
        mass = mass.sub(inc);
        size -= 1;
        for &(x, e) in g.neighbors(u) {
            if removed[x] {
                continue;
            }
            resid[x] = resid[x].sub(K::from_weight(g.edges()[e].w));
            keys[x] = loads[x].add(resid[x]);
            tracker.update(x, keys[x]);
            if let Some(c) = charges.as_deref_mut() {
                let side = if g.edges()[e].u == u { 0 } else { 1 };
                c.counts[e][side] += 1;
            }
        }
        if size > 0 {
            let d = K::density(mass, size);
            density_trace.push(d.value());
            if d.gt(&best) {
                best = d;
                best_start = order.len();
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    let mut result = PeelResult {
        order,
        increments,
        best_start,
        best_density: best,
        density_trace,
    };
    if g.is_weighted() {
        // Report the canonical value of the subset rather than the running sum.
        result.best_density = g
            .density(&result.best_subset())
            .expect("best suffix is non-empty");
    }
    result
}

fn resolve(g: &Graph, kind: TrackerKind) -> Result<TrackerKind> {
    match (kind, g.is_weighted()) {
        (TrackerKind::Bucket, true) => Err(DenseError::InvalidParameter(
            "bucket tracker requires an unweighted graph".into(),
        )),
        (TrackerKind::Auto, true) => Ok(TrackerKind::Heap),
        (TrackerKind::Auto, false) => Ok(TrackerKind::Bucket),
        (k, _) => Ok(k),
    }
}

fn run_pass(
    g: &Graph,
    loads: &mut LoadVector,
    kind: TrackerKind,
    charges: Option<&mut EdgeCharges>,
) -> Result<PeelResult> {
    if g.m() == 0 {
        return Err(DenseError::EmptyGraph);
    }
    if loads.len() != g.n() {
        return Err(DenseError::InvalidParameter(format!(
            "{} loads for {} vertices",
            loads.len(),
            g.n()
        )));
    }
    let kind = resolve(g, kind)?;
    let result = match (&mut loads.loads, kind) {
        (Loads::Exact(l), TrackerKind::Bucket) => pass::<u64, BucketQueue>(g, l, charges),
        (Loads::Exact(l), _) => pass::<u64, HeapTracker<u64>>(g, l, charges),
        (Loads::Real(l), _) => {
            let mut keyed: Vec<F> = l.iter().map(|&x| OrderedFloat(x)).collect();
            let r = pass::<F, HeapTracker<F>>(g, &mut keyed, charges);
            for (dst, src) in l.iter_mut().zip(keyed) {
                *dst = src.0;
            }
            r
        }
    };
    loads.iteration += 1;
    Ok(result)
}

/// One load-carrying peeling pass; returns the pass outcome and the
/// updated loads.
pub fn peel_iteration(
    g: &Graph,
    loads: &LoadVector,
    kind: TrackerKind,
) -> Result<(PeelResult, LoadVector)> {
    if matches!(
        (&loads.loads, g.is_weighted()),
        (Loads::Exact(_), true) | (Loads::Real(_), false)
    ) {
        return Err(DenseError::InvalidParameter(
            "load arithmetic does not match graph weighting".into(),
        ));
    }
    let mut next = loads.clone();
    let r = run_pass(g, &mut next, kind, None)?;
    Ok((r, next))
}

/// Charikar's greedy peeling: the densest suffix of the min-degree order.
pub fn charikar_peel(g: &Graph) -> Result<PeelResult> {
    charikar_peel_with(g, TrackerKind::Auto)
}

pub fn charikar_peel_with(g: &Graph, kind: TrackerKind) -> Result<PeelResult> {
    let mut loads = LoadVector::zeros(g);
    run_pass(g, &mut loads, kind, None)
}

/// Summary of one Greedy++ iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSummary {
    /// 1-based iteration index.
    pub iteration: usize,
    /// Best suffix density found within this pass.
    pub pass_best: Density,
    /// Best density over passes `1..=iteration`.
    pub running_best: Density,
    /// `max_v load_v / iteration`, an upper bound on the optimum.
    pub dual_upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyPPResult {
    pub per_iteration: Vec<IterationSummary>,
    /// Removal order of the pass that produced the best density.
    pub best_order: Vec<usize>,
    pub best_start: usize,
    pub best_density: Density,
    pub final_loads: LoadVector,
    pub iterations: usize,
    /// Present when charge recording was requested.
    pub charges: Option<EdgeCharges>,
}

impl GreedyPPResult {
    pub fn best_subset(&self) -> Vec<usize> {
        let mut s = self.best_order[self.best_start..].to_vec();
        s.sort_unstable();
        s
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyPPOptions {
    pub tracker: TrackerKind,
    /// Record per-edge charges (O(m) extra memory).
    pub record_charges: bool,
}

/// Incremental Greedy++ driver; each [`GreedyPlusPlus::step`] runs one pass.
pub struct GreedyPlusPlus<'g> {
    g: &'g Graph,
    opts: GreedyPPOptions,
    loads: LoadVector,
    best: Option<(Vec<usize>, usize, Density)>,
    history: Vec<IterationSummary>,
    charges: Option<EdgeCharges>,
    last_pass: Option<PeelResult>,
}

impl<'g> GreedyPlusPlus<'g> {
    pub fn new(g: &'g Graph, opts: GreedyPPOptions) -> Result<Self> {
        if g.m() == 0 {
            return Err(DenseError::EmptyGraph);
        }
        resolve(g, opts.tracker)?;
        let charges = opts.record_charges.then(|| EdgeCharges {
            counts: vec![[0, 0]; g.m()],
        });
        Ok(GreedyPlusPlus {
            g,
            opts,
            loads: LoadVector::zeros(g),
            best: None,
            history: Vec::new(),
            charges,
            last_pass: None,
        })
    }

    pub fn step(&mut self) -> &IterationSummary {
        let pass = run_pass(
            self.g,
            &mut self.loads,
            self.opts.tracker,
            self.charges.as_mut(),
        )
        .expect("validated in new()");
        let improved = match &self.best {
            None => true,
            Some((_, _, d)) => pass.best_density.gt(d),
        };
        if improved {
            self.best = Some((pass.order.clone(), pass.best_start, pass.best_density));
        }
        let iteration = self.loads.iteration;
        let summary = IterationSummary {
            iteration,
            pass_best: pass.best_density,
            running_best: self.best.as_ref().map(|b| b.2).expect("set above"),
            dual_upper: self.loads.max() / iteration as f64,
        };
        self.last_pass = Some(pass);
        self.history.push(summary);
        self.history.last().expect("just pushed")
    }

    pub fn loads(&self) -> &LoadVector {
        &self.loads
    }

    pub fn iterations(&self) -> usize {
        self.loads.iteration
    }

    pub fn history(&self) -> &[IterationSummary] {
        &self.history
    }

    /// Outcome of the most recent pass.
    pub fn last_pass(&self) -> Option<&PeelResult> {
        self.last_pass.as_ref()
    }

    pub fn best_density(&self) -> Option<Density> {
        self.best.as_ref().map(|b| b.2)
    }

    pub fn best_subset(&self) -> Option<Vec<usize>> {
        self.best.as_ref().map(|(order, start, _)| {
            let mut s = order[*start..].to_vec();
            s.sort_unstable();
            s
        })
    }

    pub fn finish(self) -> Result<GreedyPPResult> {
        let (best_order, best_start, best_density) = self
            .best
            .ok_or_else(|| DenseError::InvalidParameter("no Greedy++ iteration was run".into()))?;
        Ok(GreedyPPResult {
            per_iteration: self.history,
            best_order,
            best_start,
            best_density,
            iterations: self.loads.iteration,
            final_loads: self.loads,
            charges: self.charges,
        })
    }
}

/// Runs `iterations` Greedy++ passes with the default tracker.
pub fn greedy_pp(g: &Graph, iterations: usize) -> Result<GreedyPPResult> {
    greedy_pp_with(g, iterations, GreedyPPOptions::default())
}

pub fn greedy_pp_with(
    g: &Graph,
    iterations: usize,
    opts: GreedyPPOptions,
) -> Result<GreedyPPResult> {
    if iterations == 0 {
        return Err(DenseError::InvalidParameter(
            "Greedy++ needs at least one iteration".into(),
        ));
    }
    let mut run = GreedyPlusPlus::new(g, opts)?;
    for _ in 0..iterations {
        run.step();
    }
    run.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bipartite_with_cliques, complete, star};
    use crate::oracle::brute_force_densest;

    fn k4_with_tail() -> Graph {
        // K4 on 0..4, then the path 3-4-5-6.
        Graph::unweighted(
            7,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn charikar_triangle() {
        let r = charikar_peel(&complete(3)).unwrap();
        assert_eq!(r.best_density, Density::count(3, 3));
        assert_eq!(r.best_subset(), vec![0, 1, 2]);
        assert_eq!(r.increments, vec![2.0, 1.0, 0.0]);
        assert_eq!(r.order, vec![0, 1, 2]);
    }

    #[test]
    fn charikar_k4_with_pendant_path() {
        let g = k4_with_tail();
        let r = charikar_peel(&g).unwrap();
        let (_, opt) = brute_force_densest(&g).unwrap();
        assert_eq!(opt, Density::count(6, 4));
        assert_eq!(r.best_density, Density::count(6, 4));
        assert_eq!(r.best_subset(), vec![0, 1, 2, 3]);
        assert_eq!(r.order[..3], [6, 5, 4]);
    }

    #[test]
    fn charikar_returns_whole_trap_graph() {
        let g = bipartite_with_cliques(4, 50, 30);
        let r = charikar_peel(&g).unwrap();
        assert_eq!(r.best_density, Density::count(650, 234));
        assert_eq!(r.best_subset().len(), 234);
        assert_eq!(r.density_trace.len(), 234);
    }

    #[test]
    fn peel_iteration_star() {
        // Center has the largest id; with center 0 the id tie-break peels
        // it third, but the increments are the same.
        let g = Graph::unweighted(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        let (r, loads) = peel_iteration(&g, &LoadVector::zeros(&g), TrackerKind::Auto).unwrap();
        assert_eq!(r.order, vec![0, 1, 2, 3]);
        assert_eq!(r.increments, vec![1.0, 1.0, 1.0, 0.0]);
        assert_eq!(loads.exact().unwrap(), &[1, 1, 1, 0]);

        let g = star(3);
        let (r, _) = peel_iteration(&g, &LoadVector::zeros(&g), TrackerKind::Auto).unwrap();
        assert_eq!(r.order, vec![1, 2, 0, 3]);
        assert_eq!(r.increments, vec![1.0, 1.0, 1.0, 0.0]);
        assert_eq!(loads.iteration, 1);
    }

    #[test]
    fn peel_iteration_respects_prior_loads() {
        let g = Graph::unweighted(2, [(0, 1)]).unwrap();
        let loads = LoadVector {
            loads: Loads::Exact(vec![5, 0]),
            iteration: 1,
        };
        let (r, next) = peel_iteration(&g, &loads, TrackerKind::Auto).unwrap();
        assert_eq!(r.order, vec![1, 0]);
        assert_eq!(r.increments, vec![1.0, 0.0]);
        assert_eq!(next.exact().unwrap(), &[5, 1]);
    }

    #[test]
    fn peel_iteration_rejects_wrong_length() {
        let g = complete(3);
        let loads = LoadVector {
            loads: Loads::Exact(vec![0; 2]),
            iteration: 0,
        };
        assert!(peel_iteration(&g, &loads, TrackerKind::Auto).is_err());
    }

    #[test]
    fn greedy_pp_triangle_two_iterations() {
        let r = greedy_pp(&complete(3), 2).unwrap();
        assert_eq!(r.final_loads.exact().unwrap(), &[2, 2, 2]);
        assert_eq!(r.best_density, Density::count(3, 3));
        assert_eq!(r.per_iteration[0].dual_upper, 2.0);
        assert_eq!(r.per_iteration[1].dual_upper, 1.0);
    }

    #[test]
    fn greedy_pp_first_iteration_is_charikar() {
        let g = bipartite_with_cliques(3, 9, 4);
        let c = charikar_peel(&g).unwrap();
        let r = greedy_pp(&g, 1).unwrap();
        assert_eq!(r.best_density, c.best_density);
        assert_eq!(r.best_subset(), c.best_subset());
    }

    #[test]
    fn greedy_pp_errors() {
        let g = complete(3);
        assert!(matches!(
            greedy_pp(&g, 0),
            Err(DenseError::InvalidParameter(_))
        ));
        let empty = Graph::unweighted(3, []).unwrap();
        assert_eq!(greedy_pp(&empty, 1).unwrap_err(), DenseError::EmptyGraph);
        assert_eq!(charikar_peel(&empty).unwrap_err(), DenseError::EmptyGraph);
    }

    #[test]
    fn bucket_rejected_for_weighted() {
        let g = Graph::from_edges(2, [(0, 1, 2.5)], true).unwrap();
        assert!(charikar_peel_with(&g, TrackerKind::Bucket).is_err());
        let r = charikar_peel(&g).unwrap();
        assert_eq!(r.best_density.value(), 1.25);
    }

    #[test]
    fn weighted_peel_charges_residual_weight() {
        // Heavy edge 0-1 plus a light pendant 2.
        let g = Graph::from_edges(3, [(0, 1, 4.0), (1, 2, 0.5)], true).unwrap();
        let r = greedy_pp(&g, 3).unwrap();
        let total: f64 = r.final_loads.to_f64().iter().sum();
        assert!((total - 3.0 * 4.5).abs() < 1e-12);
        assert_eq!(r.best_subset(), vec![0, 1]);
        assert_eq!(r.best_density.value(), 2.0);
    }

    #[test]
    fn signed_graphs_still_peel() {
        let g = Graph::from_edges(4, [(0, 1, 3.0), (1, 2, -2.0), (2, 3, 1.0)], true).unwrap();
        let r = greedy_pp(&g, 4).unwrap();
        assert_eq!(r.best_subset(), vec![0, 1]);
        assert_eq!(r.best_density.value(), 1.5);
    }

    #[test]
    fn charges_are_recorded() {
        let g = complete(4);
        let r = greedy_pp_with(
            &g,
            3,
            GreedyPPOptions {
                record_charges: true,
                ..Default::default()
            },
        )
        .unwrap();
        let c = r.charges.unwrap();
        assert!(c.counts.iter().all(|[a, b]| a + b == 3));
    }
}
