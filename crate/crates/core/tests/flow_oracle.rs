//! Push-relabel against a plain Edmonds-Karp on random networks.

use std::collections::VecDeque;

use densekit::flow::{max_flow, FlowNetwork};
use proptest::prelude::*;

/// Shortest-augmenting-path max flow on a dense capacity matrix.
fn edmonds_karp(n: usize, arcs: &[(usize, usize, i64)], s: usize, t: usize) -> i64 {
    let mut cap = vec![vec![0i64; n]; n];
    for &(u, v, c) in arcs {
        cap[u][v] += c;
    }
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(cap[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            cap[prev[v]][v] -= bottleneck;
            cap[v][prev[v]] += bottleneck;
            v = prev[v];
        }
        total += bottleneck;
    }
}

fn arb_network() -> impl Strategy<Value = (usize, Vec<(usize, usize, i64)>)> {
    (3usize..14).prop_flat_map(|n| {
        let arc = (0..n, 0..n, 0i64..25).prop_filter("no loops", |(u, v, _)| u != v);
        (Just(n), prop::collection::vec(arc, 0..60))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_edmonds_karp((n, arcs) in arb_network()) {
        let mut net = FlowNetwork::new(n, 0, n - 1);
        for &(u, v, c) in &arcs {
            net.add_arc(u, v, c).unwrap();
        }
        let f = max_flow(&net).unwrap();
        prop_assert_eq!(f.value, edmonds_karp(n, &arcs, 0, n - 1));
        prop_assert_eq!(f.verify(&net), Ok(()));
    }
}

#[test]
fn layered_network_with_parallel_arcs() {
    // Many parallel and anti-parallel arcs exercise gap relabeling.
    let n = 40;
    let mut net = FlowNetwork::new(n, 0, n - 1);
    let mut arcs = Vec::new();
    for i in 0..n - 1 {
        for j in (i + 1)..n.min(i + 5) {
            let c = ((i * 7 + j * 13) % 11) as i64 + 1;
            arcs.push((i, j, c));
            arcs.push((j, i, c / 2));
        }
    }
    for &(u, v, c) in &arcs {
        net.add_arc(u, v, c).unwrap();
    }
    let f = max_flow(&net).unwrap();
    assert_eq!(f.value, edmonds_karp(n, &arcs, 0, n - 1));
    f.verify(&net).unwrap();
}
