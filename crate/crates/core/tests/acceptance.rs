//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false`, so `cargo test --test acceptance` executes
//! `main` directly and the process exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use rayon::prelude::*;
use trifree_core::generators::{erdos_edge_budget, generate, named, Family, GenSpec};
use trifree_core::indep::{bipartite_min_vertex_cover, g3k_certificate, strip_high_degree, turan_greedy};
use trifree_core::minor::{
    chernoff_tail_bound, densest_sub_model, randomized_contraction, sample_anchors, validate_minor_model,
};
use trifree_core::oracles::{
    disjoint_short_paths_exact, exact_binomial_tail, has_clique_minor_exact, max_independent_set_exact,
    short_path_power_exact, OracleBudget,
};
use trifree_core::paths::{max_disjoint_short_paths, short_path_power};
use trifree_core::pipeline::{dichotomy, DichotomyConfig, Outcome, Report};
use trifree_core::{Graph, VertexSet};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn small_graphs() -> Vec<Graph> {
    (0..200)
        .map(|i| {
            let (n, p) = common::shape(1000 + i, 2, 8);
            common::random_graph(n, p, 1000 + i)
        })
        .collect()
}

fn power_graph_equivalence() -> Check {
    let budget = OracleBudget::default();
    let mut compared = 0;
    for (i, g) in small_graphs().iter().enumerate() {
        for k in 1..=3 {
            let flow: Vec<_> = short_path_power(g, k, &VertexSet::new()).map_err(|e| e.to_string())?.graph.edges().collect();
            let exact = short_path_power_exact(g, k, &budget).map_err(|e| e.to_string())?;
            if flow != exact {
                return Err(format!("graph {i}, k = {k}: flow gives {} edges, oracle {}", flow.len(), exact.len()));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} (graph, k) cases identical"))
}

fn path_packing_equivalence() -> Check {
    let budget = OracleBudget::default();
    let mut graphs = small_graphs();
    graphs.push(named::petersen());
    let mut pairs = 0;
    for (i, g) in graphs.iter().enumerate() {
        for u in g.vertices() {
            for v in u + 1..g.n() {
                let flow = max_disjoint_short_paths(g, u, v).map_err(|e| e.to_string())?;
                flow.validate(g, &VertexSet::new()).map_err(|e| e.to_string())?;
                let exact = disjoint_short_paths_exact(g, u, v, &budget).map_err(|e| e.to_string())?;
                if flow.len() != exact {
                    return Err(format!("graph {i}, pair ({u}, {v}): flow {} vs exact {exact}", flow.len()));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs agree"))
}

fn turan_bound() -> Check {
    for i in 0..1000u64 {
        let (n, p) = common::shape(5000 + i, 1, 64);
        let g = common::random_graph(n, p, 5000 + i);
        let set = turan_greedy(&g).map_err(|e| e.to_string())?;
        set.verify(&g).map_err(|e| e.to_string())?;
        // n / (2m/n + 1) = n^2 / (2m + n), rounded up in integers
        let denom = 2 * g.m() + n;
        let bound = (n * n).div_ceil(denom);
        if set.len() < bound {
            return Err(format!("graph {i}: n = {n}, m = {}, size {} < {bound}", g.m(), set.len()));
        }
    }
    Ok("1000 graphs, no violations".into())
}

fn chernoff_grid() -> Check {
    let mut worst: f64 = 0.0;
    for p in [0.05, 0.1, 0.2] {
        for m in [50u64, 100, 200] {
            let exact = exact_binomial_tail(p, m, 2.0 * p * m as f64).map_err(|e| e.to_string())?;
            let bound = chernoff_tail_bound(p, m);
            if exact > bound {
                return Err(format!("p = {p}, m = {m}: tail {exact:e} > bound {bound:e}"));
            }
            worst = worst.max(exact / bound);
        }
    }
    Ok(format!("9 grid points hold, largest tail/bound ratio {worst:.4}"))
}

fn contraction_soundness() -> Check {
    let specs: Vec<GenSpec> = (0..500u64)
        .map(|i| {
            let family = match i % 5 {
                0 => Family::Cycle { n: 5 + (i as usize % 40) },
                1 => Family::CompleteBipartite { a: 2 + (i as usize % 7), b: 3 + (i as usize % 11) },
                2 => Family::Petersen,
                3 => Family::BipartiteRandom { a: 20 + (i as usize % 30), b: 25, p: 0.2 },
                _ => {
                    let n = 30 + (i as usize % 90);
                    Family::GnmTriangleDeleted { n, m: erdos_edge_budget(n, 2.0) }
                }
            };
            GenSpec::new(family, i)
        })
        .collect();
    let nonempty = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| -> Result<bool, String> {
            let g = generate(spec).map_err(|e| e.to_string())?;
            let p = 0.15 + 0.5 * (i % 4) as f64 / 4.0;
            let anchors = sample_anchors(&g, p, i as u64).map_err(|e| e.to_string())?;
            if anchors.x.is_empty() {
                return Ok(false);
            }
            let model = randomized_contraction(&g, &anchors.x, &anchors.blocked, i as u64).map_err(|e| e.to_string())?;
            validate_minor_model(&g, &model).map_err(|e| format!("run {i}: {e}"))?;
            let cert = validate_minor_model(&g, &densest_sub_model(&g, &model)).map_err(|e| format!("run {i}: {e}"))?;
            let fresh = cert.revalidate(&g).map_err(|e| format!("run {i}: {e}"))?;
            if (fresh.achieved_average_degree - cert.achieved_average_degree).abs() > 1e-9 {
                return Err(format!("run {i}: stored degree drifted"));
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>, String>>()?;
    let models = nonempty.iter().filter(|&&b| b).count();
    Ok(format!("500 runs, {models} non-empty models validated"))
}

fn g3k_independence() -> Check {
    let cases = (0..150u64)
        .into_par_iter()
        .map(|i| -> Result<usize, String> {
            let (n, p) = common::shape(7000 + i, 1, 10);
            let h = common::random_triangle_free(n, p, 7000 + i);
            let mut cases = 0;
            for k in 1..=3 {
                let power = short_path_power(&h, k, &VertexSet::new()).map_err(|e| e.to_string())?.graph;
                let mut ys: Vec<VertexSet> = h.vertices().map(VertexSet::singleton).collect();
                for a in h.vertices() {
                    ys.extend((a + 1..n).filter(|&b| !power.has_edge(a, b)).map(|b| VertexSet::from([a, b])));
                }
                for y in ys {
                    let out = g3k_certificate(&h, k, &y).map_err(|e| format!("graph {i}, k = {k}, Y = {y:?}: {e}"))?;
                    out.certificate.verify(&h).map_err(|e| e.to_string())?;
                    if out.z2.len() > (k - 1) * y.len() * y.len() {
                        return Err(format!("graph {i}, k = {k}, Y = {y:?}: |Z2| = {}", out.z2.len()));
                    }
                    cases += 1;
                }
            }
            Ok(cases)
        })
        .collect::<Result<Vec<usize>, String>>()?;
    Ok(format!("{} (graph, k, Y) inputs over 150 graphs", cases.iter().sum::<usize>()))
}

fn brute_force_cover(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| g.edges().all(|(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn konig_correctness() -> Check {
    for i in 0..300u64 {
        let (n, p) = common::shape(9000 + i, 1, 8);
        let a = (i as usize) % (n + 1);
        let g = common::random_bipartite(a, n - a, p, 9000 + i);
        let left: VertexSet = (0..a).collect();
        let cover = bipartite_min_vertex_cover(&g, &left).map_err(|e| e.to_string())?;
        let best = brute_force_cover(&g);
        if cover.cover.len() != best {
            return Err(format!("graph {i}: König {} vs exhaustive {best}", cover.cover.len()));
        }
    }
    Ok("300 bipartite graphs match".into())
}

fn dichotomy_suite() -> Vec<(GenSpec, usize)> {
    let mut suite = Vec::new();
    for (i, n) in [5, 7, 11, 30, 101, 500, 1000, 2000].into_iter().enumerate() {
        suite.push((GenSpec::new(Family::Cycle { n }, i as u64), 10));
    }
    for (i, (a, b)) in [(3, 3), (4, 4), (5, 8), (10, 10), (20, 30), (40, 40), (60, 90), (100, 100), (1, 50), (2, 200)]
        .into_iter()
        .enumerate()
    {
        suite.push((GenSpec::new(Family::CompleteBipartite { a, b }, i as u64), [4, 10, 40][i % 3]));
    }
    for i in 0..16u64 {
        let a = [10, 50, 200, 1000][i as usize % 4];
        let p = [0.5, 0.1, 0.02, 0.005][i as usize / 4];
        suite.push((GenSpec::new(Family::BipartiteRandom { a, b: a, p }, 100 + i), [5, 20, 60][i as usize % 3]));
    }
    for i in 0..16u64 {
        let n = [40, 200, 800, 2000][i as usize % 4];
        let constant = [1.0, 2.0, 4.0, 8.0][i as usize / 4];
        let m = erdos_edge_budget(n, constant);
        suite.push((GenSpec::new(Family::GnmTriangleDeleted { n, m }, 200 + i), [6, 15, 50][i as usize % 3]));
    }
    suite
}

fn dichotomy_totality() -> Check {
    let suite = dichotomy_suite();
    assert_eq!(suite.len(), 50);
    let kinds = suite
        .par_iter()
        .enumerate()
        .map(|(i, (spec, t))| -> Result<bool, String> {
            let g = generate(spec).map_err(|e| e.to_string())?;
            let config = DichotomyConfig::new(*t, 0.01).with_trials(4).with_seed(i as u64);
            let run = || -> Result<(String, bool), String> {
                let result = dichotomy(&g, &config).map_err(|e| format!("graph {i}: {e}"))?;
                let report = Report::new(&g, &config, &result);
                let json = report.to_json();
                let parsed = Report::from_json(&json).and_then(|r| r.to_result()).map_err(|e| e.to_string())?;
                parsed.revalidate(&g).map_err(|e| format!("graph {i}: {e}"))?;
                if let Outcome::Minor(cert) = &parsed.outcome {
                    if cert.achieved_average_degree < parsed.d_target {
                        return Err(format!("graph {i}: minor below target"));
                    }
                }
                Ok((json, matches!(parsed.outcome, Outcome::Minor(_))))
            };
            let (first, is_minor) = run()?;
            if first != run()?.0 {
                return Err(format!("graph {i}: report differs between identical runs"));
            }
            Ok(is_minor)
        })
        .collect::<Result<Vec<bool>, String>>()?;
    let minors = kinds.iter().filter(|&&m| m).count();
    Ok(format!("50 graphs revalidated and deterministic ({minors} minor, {} independent set)", 50 - minors))
}

fn known_values() -> Check {
    let budget = OracleBudget::default();
    for (name, g, alpha) in [
        ("C5", named::cycle(5), 2),
        ("K33", named::complete_bipartite(3, 3), 3),
        ("Petersen", named::petersen(), 4),
    ] {
        let set = max_independent_set_exact(&g, &budget).map_err(|e| e.to_string())?;
        if set.len() != alpha || !g.is_independent(set.as_slice()) {
            return Err(format!("alpha({name}) returned {}", set.len()));
        }
    }
    let pet = named::petersen();
    let model = has_clique_minor_exact(&pet, 5, &budget)
        .map_err(|e| e.to_string())?
        .ok_or("no K5 minor found in Petersen")?;
    let cert = validate_minor_model(&pet, &model).map_err(|e| e.to_string())?;
    if cert.quotient_n != 5 || cert.quotient_m != 10 {
        return Err(format!("witness quotient has {} vertices, {} edges", cert.quotient_n, cert.quotient_m));
    }
    Ok("alpha = 2, 3, 4; Petersen K5 witness validated".into())
}

fn finalboost_counting() -> Check {
    for i in 0..500u64 {
        let (n, p) = common::shape(11_000 + i, 2, 120);
        let g = common::random_graph(n, p * 0.5, 11_000 + i);
        let avg = g.average_degree().map_err(|e| e.to_string())?;
        // any d above the average degree qualifies
        let d = avg * (1.0 + (i % 7) as f64 / 10.0) + 1e-6;
        let out = strip_high_degree(&g, d).map_err(|e| e.to_string())?;
        if 2 * out.removed.len() > n {
            return Err(format!("graph {i}: removed {} of {n}", out.removed.len()));
        }
    }
    Ok("500 graphs, |Z| <= n/2 throughout".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("power-graph oracle equivalence", power_graph_equivalence),
        ("path-packing equivalence", path_packing_equivalence),
        ("Turán bound", turan_bound),
        ("Chernoff grid", chernoff_grid),
        ("minor soundness", contraction_soundness),
        ("g3k independence", g3k_independence),
        ("König correctness", konig_correctness),
        ("dichotomy totality and determinism", dichotomy_totality),
        ("known values", known_values),
        ("finalboost counting", finalboost_counting),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
