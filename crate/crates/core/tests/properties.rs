mod common;

use proptest::prelude::*;
use trifree_core::generators::{generate, named, Family, GenSpec};
use trifree_core::indep::{
    peel_low_degree, recursive_independent_set, sparse_neighborhood_set, strip_high_degree, turan_greedy,
    RecursionConfig,
};
use trifree_core::minor::{blocked_threshold, sample_anchors};
use trifree_core::oracles::{max_independent_set_exact, OracleBudget};
use trifree_core::paths::{distance_power, short_path_power};
use trifree_core::pipeline::{dichotomy, DichotomyConfig, Report};
use trifree_core::{Graph, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| common::random_graph(n, p, seed))
}

fn triangle_free_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, p, seed)| common::random_triangle_free(n, p, seed))
}

fn subset_of(g: &Graph, bits: u64) -> VertexSet {
    g.vertices().filter(|&v| bits >> (v % 64) & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balls_grow_with_radius(g in graph_strategy(20), v in 0usize..20) {
        let v = v % g.n();
        let mut last = VertexSet::new();
        for r in 0..5 {
            let ball = g.neighborhood_ball(v, r).unwrap();
            prop_assert!(last.is_subset(&ball));
            last = ball;
        }
    }

    #[test]
    fn closed_neighbourhood_is_union_of_unit_balls(g in graph_strategy(20), bits: u64) {
        let s = subset_of(&g, bits);
        let union = s.iter().fold(VertexSet::new(), |acc, v| acc.union(&g.neighborhood_ball(v, 1).unwrap()));
        prop_assert_eq!(g.closed_neighborhood(&s).unwrap(), union);
    }

    #[test]
    fn induced_subgraphs_stay_triangle_free(g in triangle_free_strategy(24), bits: u64) {
        prop_assert!(g.is_triangle_free());
        let sub = g.induced_subgraph(&subset_of(&g, bits)).unwrap();
        sub.graph.check_invariants().unwrap();
        prop_assert!(sub.graph.is_triangle_free());
    }

    #[test]
    fn average_degree_bounds_alpha(g in graph_strategy(8)) {
        // n / alpha - 1 <= average degree, from the greedy bound
        let alpha = max_independent_set_exact(&g, &OracleBudget::default()).unwrap().len();
        let n = g.n() as f64;
        prop_assert!(g.average_degree().unwrap() >= n / alpha as f64 - 1.0 - 1e-12);
    }

    #[test]
    fn power_graph_shrinks_with_k_and_blocking(g in graph_strategy(10), bits: u64) {
        let none = VertexSet::new();
        let edges = |k, b: &VertexSet| -> Vec<(usize, usize)> { short_path_power(&g, k, b).unwrap().graph.edges().collect() };
        let k1 = edges(1, &none);
        let k2 = edges(2, &none);
        let k3 = edges(3, &none);
        prop_assert!(k2.iter().all(|e| k1.contains(e)));
        prop_assert!(k3.iter().all(|e| k2.contains(e)));
        let blocked = subset_of(&g, bits);
        prop_assert!(edges(2, &blocked).iter().all(|e| k2.contains(e)));
        // base edges survive any blocking
        prop_assert!(g.edges().all(|e| edges(3, &blocked).contains(&e)));
    }

    #[test]
    fn k1_power_is_distance_three_graph(g in graph_strategy(14)) {
        let power = short_path_power(&g, 1, &VertexSet::new()).unwrap().graph;
        prop_assert_eq!(power, distance_power(&g, 3));
    }

    #[test]
    fn peeling_leaves_a_core_and_independent_centers(g in graph_strategy(30), d0 in 0usize..8) {
        let peel = peel_low_degree(&g, d0).unwrap();
        peel.centers.verify(&g).unwrap();
        prop_assert!(peel.core.graph.n() == 0 || peel.core.graph.min_degree() >= d0);
        // no center is adjacent to a core vertex
        for c in peel.centers.members.iter() {
            prop_assert!(peel.core.to_host.iter().all(|&v| v != c && !g.has_edge(v, c)));
        }
    }

    #[test]
    fn stripping_removes_at_most_half_when_d_exceeds_average(g in graph_strategy(40), slack in 0.0..3.0f64) {
        let d = g.average_degree().unwrap() + slack + 1e-9;
        let out = strip_high_degree(&g, d).unwrap();
        prop_assert!(2 * out.removed.len() <= g.n());
        prop_assert!(out.rest.graph.n() == 0 || (out.rest.graph.max_degree() as f64) < 2.0 * d);
    }

    #[test]
    fn recursion_never_loses_to_greedy(g in triangle_free_strategy(40), tau in 1.0..12.0f64) {
        let cfg = RecursionConfig { tau: Some(tau), minor_trials: 2, ..RecursionConfig::new(4.0, 0.02) };
        let rec = recursive_independent_set(&g, &cfg).unwrap();
        rec.verify(&g).unwrap();
        prop_assert!(rec.len() >= turan_greedy(&g).unwrap().len());
    }

    #[test]
    fn sparse_sets_satisfy_the_ratio(g in triangle_free_strategy(24), v in 0usize..24, tau in 1.0..6.0f64) {
        let v = v % g.n();
        if let Some(a) = sparse_neighborhood_set(&g, v, tau, 8).unwrap() {
            prop_assert!(g.is_independent(a.as_slice()));
            prop_assert!(a.is_subset(&g.neighborhood_ball(v, 2).unwrap()));
            prop_assert!(g.closed_neighborhood(&a).unwrap().len() as f64 <= tau * a.len() as f64);
        }
    }
}

#[test]
fn blocked_rule_recomputes_from_the_definition() {
    for i in 0..1000u64 {
        let spec = GenSpec::new(Family::GnmTriangleDeleted { n: 30 + (i as usize % 30), m: 120 }, i);
        let g = generate(&spec).unwrap();
        let p = 0.05 + (i % 10) as f64 * 0.05;
        let anchors = sample_anchors(&g, p, i).unwrap();
        for z in g.vertices() {
            let hits = g.neighbors(z).iter().filter(|&&u| anchors.x.contains(u)).count() as f64;
            let expect = anchors.x.contains(z) || hits > blocked_threshold(p, g.degree(z));
            assert_eq!(anchors.blocked.contains(z), expect, "sample {i}, vertex {z}");
        }
    }
}

#[test]
fn dichotomy_reports_are_reproducible() {
    let g = generate(&GenSpec::new(Family::GnmTriangleDeleted { n: 300, m: 1500 }, 3)).unwrap();
    let config = DichotomyConfig::new(12, 0.02).with_trials(6).with_seed(77);
    let a = Report::new(&g, &config, &dichotomy(&g, &config).unwrap()).to_json();
    let b = Report::new(&g, &config, &dichotomy(&g, &config).unwrap()).to_json();
    assert_eq!(a, b);
}

/// Every independent set of the Petersen graph, checked exhaustively:
/// the sparse-set search succeeds exactly when some independent `A` inside
/// the ball has `|N[A]| <= tau |A|`.
#[test]
fn petersen_sparse_sets_match_exhaustive_search() {
    let pet = named::petersen();
    let independent: Vec<VertexSet> = (1u32..1 << 10)
        .map(|mask| (0..10).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>())
        .filter(|s| pet.is_independent(s.as_slice()))
        .collect();
    let best_ratio = independent
        .iter()
        .map(|a| pet.closed_neighborhood(a).unwrap().len() as f64 / a.len() as f64)
        .fold(f64::INFINITY, f64::min);
    // a maximum independent set of size 4 covers all ten vertices
    assert_eq!(best_ratio, 2.5);
    for tau in [2.0, 2.4, 2.5, 3.0, 3.5, 4.0] {
        for v in pet.vertices() {
            let found = sparse_neighborhood_set(&pet, v, tau, 8).unwrap();
            if tau < best_ratio {
                assert!(found.is_none(), "tau {tau}");
            }
            if tau >= 4.0 {
                assert!(found.is_some(), "tau {tau}: singletons qualify");
            }
        }
    }
}
