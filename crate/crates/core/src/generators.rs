//! Seeded generators for triangle-free test families and a few named graphs.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::graph::{Graph, Vertex};
use crate::rng;

/// Default value of the constant `A` in the random triangle-free
/// construction, which uses an edge budget of `n^{3/2} / sqrt(A)`.
pub const DEFAULT_ERDOS_CONSTANT: f64 = 2.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Cycle { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    /// Each of the `a * b` cross pairs is an edge independently with probability `p`.
    BipartiteRandom { a: usize, b: usize, p: f64 },
    /// Uniform `G(n, m)` followed by deterministic triangle deletion.
    GnmTriangleDeleted { n: usize, m: usize },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Cycle { .. } => "cycle",
            Family::CompleteBipartite { .. } => "complete_bipartite",
            Family::Petersen => "petersen",
            Family::BipartiteRandom { .. } => "bipartite_random",
            Family::GnmTriangleDeleted { .. } => "gnm_triangle_deleted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        Self { family, seed }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Cycle { n } if n < 3 => Err(input_err!("a cycle needs at least 3 vertices, got {n}")),
            Family::BipartiteRandom { p, .. } if !(0.0..=1.0).contains(&p) => {
                Err(input_err!("edge probability {p} outside [0, 1]"))
            }
            Family::GnmTriangleDeleted { n, m } if m > n * n.saturating_sub(1) / 2 => {
                Err(input_err!("edge budget {m} exceeds C({n}, 2)"))
            }
            _ => Ok(()),
        }
    }
}

/// Deterministic in `spec`: the same spec always yields the same graph.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::stream(spec.seed, spec.family.tag(), 0);
    Ok(match spec.family {
        Family::Cycle { n } => named::cycle(n),
        Family::CompleteBipartite { a, b } => named::complete_bipartite(a, b),
        Family::Petersen => named::petersen(),
        Family::BipartiteRandom { a, b, p } => {
            let mut edges = Vec::new();
            for u in 0..a {
                for v in a..a + b {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(a + b, edges)?
        }
        Family::GnmTriangleDeleted { n, m } => {
            let total = n * n.saturating_sub(1) / 2;
            let mut edges: Vec<(Vertex, Vertex)> =
                index::sample(&mut rng, total, m).into_iter().map(|i| pair_from_index(n, i)).collect();
            edges.sort_unstable();
            delete_triangles(n, &edges)
        }
    })
}

/// `floor(n^{3/2} / sqrt(A))`, the edge budget of the random construction.
pub fn erdos_edge_budget(n: usize, erdos_constant: f64) -> usize {
    ((n as f64).powf(1.5) / erdos_constant.sqrt()).floor() as usize
}

/// Maps `0..C(n,2)` onto pairs `(u, v)`, `u < v`, in lexicographic order.
fn pair_from_index(n: usize, mut i: usize) -> (Vertex, Vertex) {
    let mut u = 0;
    while i >= n - 1 - u {
        i -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + i)
}

/// Repeatedly takes the lexicographically smallest triangle `a < b < c` and
/// deletes its smallest edge `ab`, until none remain.
///
/// Deleting edges never creates a triangle, so the smallest surviving
/// triangle only moves forward and a single ordered sweep suffices.
pub fn delete_triangles(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    for a in 0..n {
        let forward: Vec<Vertex> = adj[a].range(a + 1..).copied().collect();
        for b in forward {
            let closes = adj[a].range(b + 1..).any(|c| adj[b].contains(c));
            if closes {
                adj[a].remove(&b);
                adj[b].remove(&a);
            }
        }
    }
    Graph::from_sorted_adjacency(adj.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Small deterministic graphs used throughout the tests and examples.
pub mod named {
    use super::*;

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs n >= 3");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid clique")
    }

    /// Parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid complete bipartite graph")
    }

    /// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
    }

    /// Vertex-disjoint copies laid out consecutively.
    pub fn disjoint_union(parts: &[Graph]) -> Graph {
        let mut offset = 0;
        let mut edges = Vec::new();
        for g in parts {
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
            offset += g.n();
        }
        Graph::from_edges(offset, edges).expect("valid disjoint union")
    }
}
