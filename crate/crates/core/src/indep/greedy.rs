use std::collections::BTreeSet;

use super::{IndependentSetCertificate, Provenance};
use crate::error::{input_err, Result};
use crate::graph::{Graph, Subgraph, Vertex, VertexSet};

/// Repeatedly takes a vertex of minimum current degree (lowest id on ties)
/// and deletes its closed neighbourhood. The result has at least
/// `n / (avg_degree + 1)` vertices.
pub fn turan_greedy(g: &Graph) -> Result<IndependentSetCertificate> {
    if g.n() == 0 {
        return Err(input_err!("greedy independent set of the empty graph"));
    }
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut chosen = Vec::new();
    while let Some((_, v)) = queue.pop_first() {
        chosen.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&u| alive[u]));
        for &w in &removed {
            alive[w] = false;
            queue.remove(&(degree[w], w));
        }
        for &w in &removed[1..] {
            for &x in g.neighbors(w) {
                if alive[x] {
                    queue.remove(&(degree[x], x));
                    degree[x] -= 1;
                    queue.insert((degree[x], x));
                }
            }
        }
    }
    IndependentSetCertificate::new(g, chosen.into_iter().collect(), Provenance::Turan)
}

#[derive(Clone, Debug)]
pub struct Peeling {
    /// What remains: minimum degree at least `d0`, possibly empty.
    pub core: Subgraph,
    /// The removed low-degree vertices, independent in the input graph.
    pub centers: IndependentSetCertificate,
}

/// While some vertex has current degree below `d0`, removes the lowest-id
/// such vertex together with its neighbours and records it as a center.
pub fn peel_low_degree(g: &Graph, d0: usize) -> Result<Peeling> {
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut low: BTreeSet<Vertex> = g.vertices().filter(|&v| degree[v] < d0).collect();
    let mut centers = Vec::new();
    while let Some(v) = low.pop_first() {
        centers.push(v);
        let mut removed = vec![v];
        removed.extend(g.neighbors(v).iter().copied().filter(|&u| alive[u]));
        for &w in &removed {
            alive[w] = false;
            low.remove(&w);
        }
        for &w in &removed {
            for &x in g.neighbors(w) {
                if alive[x] {
                    degree[x] -= 1;
                    if degree[x] < d0 {
                        low.insert(x);
                    }
                }
            }
        }
    }
    let keep: VertexSet = g.vertices().filter(|&v| alive[v]).collect();
    let core = g.induced_subgraph(&keep)?;
    debug_assert!(core.graph.n() == 0 || core.graph.min_degree() >= d0);
    let centers = IndependentSetCertificate::new(g, centers.into_iter().collect(), Provenance::PeelCenters)?;
    Ok(Peeling { core, centers })
}

#[derive(Clone, Debug)]
pub struct Stripped {
    pub rest: Subgraph,
    pub removed: VertexSet,
}

/// Removes every vertex of degree at least `2d`.
pub fn strip_high_degree(g: &Graph, d: f64) -> Result<Stripped> {
    if !(d.is_finite() && d > 0.0) {
        return Err(input_err!("d must be positive, got {d}"));
    }
    let removed: VertexSet = g.vertices().filter(|&v| g.degree(v) as f64 >= 2.0 * d).collect();
    let rest = g.without(&removed)?;
    Ok(Stripped { rest, removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn turan_examples() {
        assert_eq!(turan_greedy(&named::cycle(5)).unwrap().len(), 2);
        let k33 = turan_greedy(&named::complete_bipartite(3, 3)).unwrap();
        assert_eq!(k33.members, VertexSet::from([0, 1, 2]));
        assert_eq!(turan_greedy(&named::petersen()).unwrap().len(), 4);
        assert!(turan_greedy(&Graph::empty(0)).is_err());
        assert_eq!(turan_greedy(&Graph::empty(7)).unwrap().len(), 7);
    }

    #[test]
    fn peel_examples() {
        let pet = named::petersen();
        let p = peel_low_degree(&pet, 3).unwrap();
        assert_eq!(p.core.graph, pet);
        assert!(p.centers.is_empty());

        let star = named::complete_bipartite(1, 5);
        let p = peel_low_degree(&star, 2).unwrap();
        assert_eq!(p.core.graph.n(), 0);
        assert_eq!(p.centers.members, VertexSet::from([1, 2, 3, 4, 5]));

        let p = peel_low_degree(&named::cycle(5), 3).unwrap();
        assert_eq!(p.core.graph.n(), 0);
        assert_eq!(p.centers.members, VertexSet::from([0, 2]));
    }

    #[test]
    fn peel_keeps_dense_core() {
        // K4 with a pendant vertex: peeling at 3 removes the pendant and its
        // neighbour, leaving a triangle that is then peeled completely.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let p = peel_low_degree(&g, 3).unwrap();
        assert_eq!(p.core.graph.n(), 0);
        let p = peel_low_degree(&g, 2).unwrap();
        assert_eq!(p.core.to_host, vec![0, 1, 2]);
        assert_eq!(p.centers.members, VertexSet::from([4]));
    }

    #[test]
    fn strip_examples() {
        let pet = named::petersen();
        let s = strip_high_degree(&pet, 2.0).unwrap();
        assert!(s.removed.is_empty());
        assert_eq!(s.rest.graph, pet);

        let star = named::complete_bipartite(1, 5);
        let s = strip_high_degree(&star, 2.0).unwrap();
        assert_eq!(s.removed, VertexSet::singleton(0));
        assert_eq!((s.rest.graph.n(), s.rest.graph.m()), (5, 0));
        assert!(strip_high_degree(&star, 0.0).is_err());
    }
}
