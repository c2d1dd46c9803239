//! Undirected simple graphs, edge-list parsing and density arithmetic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{DenseError, Result};

/// Relative tolerance used when two weighted densities are compared.
pub const WEIGHT_REL_TOL: f64 = 1e-12;

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// The endpoint that is not `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected weighted simple graph on vertices `0..n`.
///
/// Adjacency is stored in compressed form: the neighbors of `v` are
/// `adj[offsets[v]..offsets[v + 1]]`, each entry a `(neighbor, edge id)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adj: Vec<(usize, usize)>,
    labels: Vec<String>,
    weighted: bool,
    signed: bool,
}

impl Graph {
    /// Builds a graph from an explicit edge list. Rejects self-loops,
    /// duplicate pairs and out-of-range ids; vertex labels default to the
    /// decimal id.
    pub fn from_edges<I>(n: usize, edges: I, weighted: bool) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut seen = HashMap::new();
        let mut list = Vec::new();
        for (a, b, w) in edges {
            if a >= n {
                return Err(DenseError::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(DenseError::VertexOutOfRange(b));
            }
            if a == b {
                return Err(DenseError::InvalidGraph(format!("self-loop at {a}")));
            }
            if !w.is_finite() {
                return Err(DenseError::InvalidGraph(format!(
                    "non-finite weight on {a}-{b}"
                )));
            }
            if !weighted && w != 1.0 {
                return Err(DenseError::InvalidGraph(format!(
                    "unweighted graph has weight {w} on {a}-{b}"
                )));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if seen.insert((u, v), list.len()).is_some() {
                return Err(DenseError::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            list.push(Edge { u, v, w });
        }
        let labels = (0..n).map(|v| v.to_string()).collect();
        Ok(Self::assemble(n, list, labels, weighted))
    }

    /// Unweighted convenience constructor.
    pub fn unweighted<I>(n: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, pairs.into_iter().map(|(u, v)| (u, v, 1.0)), false)
    }

    fn assemble(n: usize, edges: Vec<Edge>, labels: Vec<String>, weighted: bool) -> Graph {
        let mut deg = vec![0usize; n];
        for e in &edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut adj = vec![(0, 0); 2 * edges.len()];
        for (id, e) in edges.iter().enumerate() {
            adj[cursor[e.u]] = (e.v, id);
            cursor[e.u] += 1;
            adj[cursor[e.v]] = (e.u, id);
            cursor[e.v] += 1;
        }
        let signed = edges.iter().any(|e| e.w < 0.0);
        Graph {
            n,
            edges,
            offsets,
            adj,
            labels,
            weighted,
            signed,
        }
    }

    /// Replaces the vertex labels used when reporting subsets.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(DenseError::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sum of incident edge weights, accumulated in ascending edge-id order.
    pub fn weighted_degree(&self, v: usize) -> f64 {
        let mut ids: Vec<usize> = self.neighbors(v).iter().map(|&(_, e)| e).collect();
        ids.sort_unstable();
        ids.into_iter().map(|e| self.edges[e].w).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_weighted_degree(&self) -> f64 {
        (0..self.n)
            .map(|v| self.weighted_degree(v))
            .fold(0.0, f64::max)
    }

    /// Total edge weight w(V); equals `m` for unweighted graphs.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    #[inline]
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// True when any edge weight is negative.
    #[inline]
    pub fn is_signed(&self) -> bool {
        self.signed
    }

    /// True when every weight is an integer (always true for unweighted graphs).
    pub fn has_integer_weights(&self) -> bool {
        self.edges.iter().all(|e| e.w.fract() == 0.0)
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks up the dense id assigned to an input label.
    pub fn vertex_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Degree density of `subset`: induced edge weight divided by its size.
    /// Duplicate ids in `subset` are ignored.
    pub fn density(&self, subset: &[usize]) -> Result<Density> {
        if subset.is_empty() {
            return Err(DenseError::EmptySubset);
        }
        let mut inside = vec![false; self.n];
        let mut size = 0;
        for &v in subset {
            if v >= self.n {
                return Err(DenseError::VertexOutOfRange(v));
            }
            if !inside[v] {
                inside[v] = true;
                size += 1;
            }
        }
        let induced = self.edges.iter().filter(|e| inside[e.u] && inside[e.v]);
        Ok(if self.weighted {
            Density::weighted(induced.map(|e| e.w).sum(), size)
        } else {
            Density::count(induced.count() as u64, size)
        })
    }

    /// Density of the whole vertex set, `m / n` (or `w(V) / n`).
    pub fn full_density(&self) -> Density {
        if self.weighted {
            Density::weighted(self.total_weight(), self.n)
        } else {
            Density::count(self.m() as u64, self.n)
        }
    }

    /// Serializes back to the edge-list text format using the original labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            if self.weighted {
                out.push_str(&format!(
                    "{} {} {}\n",
                    self.labels[e.u], self.labels[e.v], e.w
                ));
            } else {
                out.push_str(&format!("{} {}\n", self.labels[e.u], self.labels[e.v]));
            }
        }
        out
    }
}

/// Options for [`parse_edge_list`].
#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub weighted: bool,
    pub comment_prefix: String,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            weighted: false,
            comment_prefix: "#".to_string(),
        }
    }
}

/// Parses SNAP-style edge-list text into a cleaned simple undirected graph.
///
/// Direction is ignored, self-loops are dropped and repeated pairs collapse
/// to their first occurrence (a warning is logged if a later copy carries a
/// different weight). Labels are remapped to dense ids in order of first
/// appearance on a kept edge.
pub fn parse_edge_list(text: &str, opts: &ParseOptions) -> Result<Graph> {
    let want = if opts.weighted { 3 } else { 2 };
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty()
            || (!opts.comment_prefix.is_empty() && line.starts_with(&opts.comment_prefix))
        {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != want {
            return Err(DenseError::Parse {
                line: line_no,
                msg: format!("expected {want} tokens, found {}", tokens.len()),
            });
        }
        let w = if opts.weighted {
            let w: f64 = tokens[2].parse().map_err(|_| DenseError::Parse {
                line: line_no,
                msg: format!("bad weight {:?}", tokens[2]),
            })?;
            if !w.is_finite() {
                return Err(DenseError::Parse {
                    line: line_no,
                    msg: format!("non-finite weight {:?}", tokens[2]),
                });
            }
            w
        } else {
            1.0
        };
        if tokens[0] == tokens[1] {
            continue;
        }
        let a = intern(tokens[0], &mut ids, &mut labels);
        let b = intern(tokens[1], &mut ids, &mut labels);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        match seen.get(&(u, v)) {
            Some(&first) => {
                if edges[first].w != w {
                    log::warn!(
                        "line {line_no}: duplicate edge {} {} with weight {w}; keeping first weight {}",
                        tokens[0],
                        tokens[1],
                        edges[first].w
                    );
                }
            }
            None => {
                seen.insert((u, v), edges.len());
                edges.push(Edge { u, v, w });
            }
        }
    }

    if edges.is_empty() {
        return Err(DenseError::EmptyGraph);
    }
    Ok(Graph::assemble(labels.len(), edges, labels, opts.weighted))
}

fn intern<'a>(
    label: &'a str,
    ids: &mut HashMap<&'a str, usize>,
    labels: &mut Vec<String>,
) -> usize {
    *ids.entry(label).or_insert_with(|| {
        labels.push(label.to_string());
        labels.len() - 1
    })
}

/// Numerator of a degree density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Numerator {
    /// Exact induced edge count (unweighted graphs).
    Count(u64),
    /// Induced edge weight.
    Weight(f64),
}

/// Degree density `e[S] / |S|` (or `w(S) / |S|`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub numerator: Numerator,
    pub size: usize,
}

impl Density {
    pub fn count(edges: u64, size: usize) -> Density {
        assert!(size >= 1, "density denominator must be positive");
        Density {
            numerator: Numerator::Count(edges),
            size,
        }
    }

    pub fn weighted(weight: f64, size: usize) -> Density {
        assert!(size >= 1, "density denominator must be positive");
        Density {
            numerator: Numerator::Weight(weight),
            size,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator_f64() / self.size as f64
    }

    pub fn numerator_f64(&self) -> f64 {
        match self.numerator {
            Numerator::Count(c) => c as f64,
            Numerator::Weight(w) => w,
        }
    }

    /// Exact `(numerator, denominator)` when the numerator is an edge count.
    pub fn as_ratio(&self) -> Option<(u64, u64)> {
        match self.numerator {
            Numerator::Count(c) => Some((c, self.size as u64)),
            Numerator::Weight(_) => None,
        }
    }

    /// Compares two densities. Counts are compared exactly by
    /// cross-multiplication; anything involving a real weight compares equal
    /// within [`WEIGHT_REL_TOL`].
    pub fn compare(&self, other: &Density) -> Ordering {
        match (self.numerator, other.numerator) {
            (Numerator::Count(a), Numerator::Count(c)) => {
                let lhs = a as u128 * other.size as u128;
                let rhs = c as u128 * self.size as u128;
                lhs.cmp(&rhs)
            }
            _ => {
                let (x, y) = (self.value(), other.value());
                let scale = x.abs().max(y.abs()).max(f64::MIN_POSITIVE);
                if (x - y).abs() <= WEIGHT_REL_TOL * scale {
                    Ordering::Equal
                } else if x < y {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn gt(&self, other: &Density) -> bool {
        self.compare(other) == Ordering::Greater
    }

    /// Compares against an exact rational `p / q`. Real weights fall back to
    /// floating point.
    pub fn compare_ratio(&self, p: u64, q: u64) -> Ordering {
        match self.numerator {
            Numerator::Count(c) => (c as u128 * q as u128).cmp(&(p as u128 * self.size as u128)),
            Numerator::Weight(w) => {
                let x = w * q as f64;
                let y = p as f64 * self.size as f64;
                x.partial_cmp(&y).unwrap_or(Ordering::Equal)
            }
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.numerator {
            Numerator::Count(c) => write!(f, "{}/{} ({:.6})", c, self.size, self.value()),
            Numerator::Weight(w) => write!(f, "{}/{} ({:.6})", w, self.size, self.value()),
        }
    }
}
