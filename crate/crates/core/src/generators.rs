//! Deterministic and seeded graph families.

use rand::Rng;

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    Graph::unweighted(n, e).expect("valid complete graph")
}

pub fn path(n: usize) -> Graph {
    Graph::unweighted(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    Graph::unweighted(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::unweighted(10, e).expect("valid petersen graph")
}

/// Complete bipartite `K_{d,big}` (vertices `0..d` on the small side)
/// disjoint from `k` cliques on `d + 2` vertices.
///
/// Charikar's peeling returns the whole graph here while the bipartite
/// block is the optimum; Greedy++ recovers it within a few passes.
pub fn bipartite_with_cliques(d: usize, big: usize, k: usize) -> Graph {
    let mut e = Vec::new();
    for a in 0..d {
        for b in 0..big {
            e.push((a, d + b));
        }
    }
    let mut base = d + big;
    for _ in 0..k {
        for i in 0..d + 2 {
            for j in i + 1..d + 2 {
                e.push((base + i, base + j));
            }
        }
        base += d + 2;
    }
    Graph::unweighted(base, e).expect("valid bipartite-with-cliques graph")
}

/// Erdős–Rényi `G(n, p)`. May contain isolated vertices and zero edges.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    Graph::unweighted(n, e).expect("valid G(n,p)")
}

/// `G(n, p)` with integer weights drawn uniformly from `1..=max_w`.
pub fn erdos_renyi_weighted<R: Rng>(n: usize, p: f64, max_w: u32, rng: &mut R) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j, rng.gen_range(1..=max_w) as f64));
            }
        }
    }
    Graph::from_edges(n, e, true).expect("valid weighted G(n,p)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let g = bipartite_with_cliques(4, 50, 30);
        assert_eq!((g.n(), g.m()), (234, 650));
        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(star(3).m(), 3);
        assert_eq!(cycle(5).m(), 5);
    }
}
