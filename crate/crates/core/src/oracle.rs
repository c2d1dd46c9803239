//! Exhaustive densest-subgraph oracle for small graphs.
//!
//! Independent of every solver in this crate; used to check them.

use std::cmp::Ordering;

use crate::error::{DenseError, Result};
use crate::graph::{Density, Graph};

/// Default enumeration guard.
pub const DEFAULT_ORACLE_LIMIT: usize = 24;

/// [`brute_force_densest_with_limit`] with the default guard of 24 vertices.
pub fn brute_force_densest(g: &Graph) -> Result<(Vec<usize>, Density)> {
    brute_force_densest_with_limit(g, DEFAULT_ORACLE_LIMIT)
}

/// Enumerates every non-empty vertex subset and returns a densest one.
///
/// Ties go to the smaller subset, then to the lexicographically smallest
/// sorted id list.
pub fn brute_force_densest_with_limit(g: &Graph, limit: usize) -> Result<(Vec<usize>, Density)> {
    let n = g.n();
    if n > limit || n >= 63 {
        return Err(DenseError::OracleScale { n, limit });
    }
    if n == 0 {
        return Err(DenseError::EmptyGraph);
    }
    let mut nbr = vec![0u64; n];
    for e in g.edges() {
        nbr[e.u] |= 1 << e.v;
        nbr[e.v] |= 1 << e.u;
    }

    let mut best_mask = 0u64;
    let mut best: Option<Density> = None;
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        let d = if g.is_weighted() {
            let w: f64 = g
                .edges()
                .iter()
                .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
                .map(|e| e.w)
                .sum();
            Density::weighted(w, size)
        } else {
            let mut twice = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                twice += (nbr[v] & mask).count_ones() as u64;
            }
            Density::count(twice / 2, size)
        };
        let take = match &best {
            None => true,
            Some(b) => match d.compare(b) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => {
                    size < b.size || (size == b.size && lex_smaller(mask, best_mask))
                }
            },
        };
        if take {
            best = Some(d);
            best_mask = mask;
        }
    }
    let subset = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    Ok((subset, best.expect("n >= 1")))
}

/// Whether the sorted id list of `a` precedes that of `b` (equal popcounts).
fn lex_smaller(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    // The first differing id belongs to the lexicographically smaller list.
    a >> diff.trailing_zeros() & 1 == 1
}
