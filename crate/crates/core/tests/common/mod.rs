#![allow(dead_code)]

use rand::Rng;
use trifree_core::generators::delete_triangles;
use trifree_core::rng;
use trifree_core::{Graph, Vertex};

/// `G(n, p)` drawn from the `"test-graph"` stream of `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    Graph::from_edges(n, random_pairs(n, p, seed)).unwrap()
}

/// `G(n, p)` with triangles removed by the generator's deletion sweep.
pub fn random_triangle_free(n: usize, p: f64, seed: u64) -> Graph {
    delete_triangles(n, &random_pairs(n, p, seed))
}

/// Random bipartite graph with parts `0..a` and `a..a+b`.
pub fn random_bipartite(a: usize, b: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng::stream(seed, "test-bipartite", 0);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(a + b, edges).unwrap()
}

/// Size and edge density for the `i`-th small test graph, `n` in `lo..=hi`.
pub fn shape(seed: u64, lo: usize, hi: usize) -> (usize, f64) {
    let mut rng = rng::stream(seed, "test-shape", 0);
    (rng.gen_range(lo..=hi), rng.gen_range(0.1..0.9))
}

fn random_pairs(n: usize, p: f64, seed: u64) -> Vec<(Vertex, Vertex)> {
    let mut rng = rng::stream(seed, "test-graph", 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}
