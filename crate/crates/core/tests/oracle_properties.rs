//! Solver invariants checked against the exhaustive oracle on small graphs.

use densekit::dual::{certify, dual_upper_bound_exact, reconstruct_dual};
use densekit::flow::{build_feasibility_network, exact_densest, feasibility, FeasibilityQuery};
use densekit::generators::{bipartite_with_cliques, erdos_renyi};
use densekit::mwu::{mwu_solve_with, MwuOptions};
use densekit::oracle::brute_force_densest;
use densekit::peeling::{
    charikar_peel, charikar_peel_with, greedy_pp, greedy_pp_with, GreedyPPOptions, TrackerKind,
};
use densekit::{parse_edge_list, Density, Graph, ParseOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.15f64..0.9, any::<u64>())
        .prop_map(|(n, p, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            erdos_renyi(n, p, &mut rng)
        })
        .prop_filter("needs an edge", |g| g.m() > 0)
}

/// `a/b <= c/d` for exact ratios.
fn le(a: (u64, u64), c: (u64, u64)) -> bool {
    a.0 as u128 * c.1 as u128 <= c.0 as u128 * a.1 as u128
}

#[test]
fn oracle_on_bipartite_plus_clique() {
    // K_{3,9} has density 27/12 and beats K_5 at 2.
    let g = bipartite_with_cliques(3, 9, 0);
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    for i in 0..5 {
        for j in i + 1..5 {
            edges.push((12 + i, 12 + j));
        }
    }
    let g = Graph::unweighted(17, edges).unwrap();
    let (s, d) = brute_force_densest(&g).unwrap();
    assert_eq!(s, (0..12).collect::<Vec<_>>());
    assert_eq!(d, Density::count(27, 12));
    assert_eq!(d.value(), 2.25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_matches_oracle(g in arb_graph(11)) {
        let (_, opt) = brute_force_densest(&g).unwrap();
        let r = exact_densest(&g).unwrap();
        prop_assert_eq!(r.density.compare(&opt), std::cmp::Ordering::Equal);
        prop_assert_eq!(g.density(&r.subset).unwrap(), r.density);
    }

    #[test]
    fn greedy_properties(g in arb_graph(12), t in 1usize..8) {
        let (_, opt) = brute_force_densest(&g).unwrap();
        let (a, b) = opt.as_ratio().unwrap();
        let r = greedy_pp(&g, t).unwrap();
        let loads = r.final_loads.exact().unwrap();

        // Conservation: every pass charges each edge once.
        prop_assert_eq!(loads.iter().sum::<u64>(), (t * g.m()) as u64);
        // Load bound: l_v <= 2 t rho*.
        for &l in loads {
            prop_assert!(l as u128 * b as u128 <= 2 * t as u128 * a as u128);
        }
        // 2-approximation, and never above the optimum.
        let best = r.best_density.as_ratio().unwrap();
        prop_assert!(2 * best.0 as u128 * b as u128 >= a as u128 * best.1 as u128);
        prop_assert!(le(best, (a, b)));
        // Weak duality: optimum <= max load / T.
        let upper = dual_upper_bound_exact(&r.final_loads, t).unwrap().unwrap();
        prop_assert!(le((a, b), upper));
        // Monotone running best.
        for w in r.per_iteration.windows(2) {
            prop_assert!(w[1].running_best.compare(&w[0].running_best).is_ge());
        }
        // Reported subset recomputes to the reported density.
        prop_assert_eq!(g.density(&r.best_subset()).unwrap(), r.best_density);
        let c = certify(&r.best_density, &r.final_loads, t).unwrap();
        prop_assert!(c.ratio <= 1.0 && c.ratio >= 0.25);
    }

    #[test]
    fn first_iteration_is_charikar(g in arb_graph(16)) {
        let c = charikar_peel(&g).unwrap();
        let r = greedy_pp(&g, 1).unwrap();
        prop_assert_eq!(c.best_density, r.best_density);
        prop_assert_eq!(c.best_subset(), r.best_subset());
        prop_assert_eq!(c.density_trace.len(), g.n());
    }

    #[test]
    fn trackers_agree(g in arb_graph(30), t in 1usize..6) {
        let bucket = greedy_pp_with(&g, t, GreedyPPOptions { tracker: TrackerKind::Bucket, ..Default::default() }).unwrap();
        let heap = greedy_pp_with(&g, t, GreedyPPOptions { tracker: TrackerKind::Heap, ..Default::default() }).unwrap();
        prop_assert_eq!(&bucket, &heap);
        prop_assert_eq!(
            charikar_peel_with(&g, TrackerKind::Bucket).unwrap(),
            charikar_peel_with(&g, TrackerKind::Heap).unwrap()
        );
    }

    #[test]
    fn averaged_dual_is_feasible(g in arb_graph(12), t in 1usize..10) {
        let r = greedy_pp_with(&g, t, GreedyPPOptions { record_charges: true, ..Default::default() }).unwrap();
        let charges = r.charges.as_ref().unwrap();
        for (e, [cu, cv]) in g.edges().iter().zip(&charges.counts) {
            prop_assert_eq!((cu + cv) as usize, t, "edge {}-{}", e.u, e.v);
        }
        let mut per_vertex = vec![0u64; g.n()];
        for (e, [cu, cv]) in g.edges().iter().zip(&charges.counts) {
            per_vertex[e.u] += *cu as u64;
            per_vertex[e.v] += *cv as u64;
        }
        prop_assert_eq!(per_vertex.as_slice(), r.final_loads.exact().unwrap());
        let avg = reconstruct_dual(&g, charges, t).unwrap();
        for v in 0..g.n() {
            prop_assert!((avg.loads[v] - r.final_loads.get(v) / t as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn feasibility_is_monotone_and_cuts_are_sound(g in arb_graph(10), p in 1u64..40, q in 1u64..12) {
        let (_, opt) = brute_force_densest(&g).unwrap();
        let f = feasibility(&g, FeasibilityQuery::new(p, q).unwrap(), None).unwrap();
        let net = build_feasibility_network(&g, f.query, None).unwrap();
        prop_assert_eq!(f.flow.verify(&net.net), Ok(()));
        // Feasible exactly when D >= rho*.
        prop_assert_eq!(f.feasible, opt.compare_ratio(p, q).is_le());
        if f.feasible {
            let bigger = feasibility(&g, FeasibilityQuery::new(p + 1, q).unwrap(), None).unwrap();
            prop_assert!(bigger.feasible);
        } else {
            prop_assert!(!f.dense_side.is_empty());
            let d = g.density(&f.dense_side).unwrap();
            prop_assert!(d.compare_ratio(f.query.p, f.query.q).is_gt());
        }
    }

    #[test]
    fn parse_roundtrip(g in arb_graph(20)) {
        let text = g.to_edge_list();
        let once = parse_edge_list(&text, &ParseOptions::default()).unwrap();
        let twice = parse_edge_list(&once.to_edge_list(), &ParseOptions::default()).unwrap();
        prop_assert_eq!(once.m(), g.m());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn density_upper_bounds(g in arb_graph(14), mask in any::<u64>()) {
        let subset: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let d = g.density(&subset).unwrap();
        let (e, s) = d.as_ratio().unwrap();
        // e[S] <= |S|(|S|-1)/2
        prop_assert!(2 * e <= s * (s - 1));
        let (_, opt) = brute_force_densest(&g).unwrap();
        prop_assert!(opt.compare(&d).is_ge());
    }
}

#[test]
fn mwu_bounds_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 12 {
        let g = erdos_renyi(9, 0.5, &mut rng);
        if g.m() == 0 {
            continue;
        }
        checked += 1;
        let (_, opt) = brute_force_densest(&g).unwrap();
        let rho = opt.value();
        let r = mwu_solve_with(
            &g,
            &MwuOptions {
                record_rounds: true,
                ..MwuOptions::new(0.1)
            },
        )
        .unwrap();
        for c in r.round_values.as_ref().unwrap() {
            assert!(
                *c <= rho * (1.0 + 1e-9),
                "round value {c} above optimum {rho}"
            );
        }
        assert!(r.dual_value >= rho * (1.0 - 1e-9));
        assert!(r.dual_value <= 1.1 * rho, "{} vs {}", r.dual_value, rho);
        assert!(r.average_value <= rho * (1.0 + 1e-9));
        assert!(r.max_round_load <= g.max_degree() as f64);
        for f in &r.assignment.f {
            assert!((f[0] + f[1] - 1.0).abs() < 1e-12);
        }
    }
}
