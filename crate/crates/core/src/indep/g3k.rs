use super::cover::bipartite_min_vertex_cover;
use super::{IndependentSetCertificate, Provenance};
use crate::error::{input_err, validation_err, Result};
use crate::graph::{Graph, VertexSet};
use crate::paths::max_disjoint_short_paths;

/// The independent set `N(Y) \ (Z1 ∪ Z2)` together with the removed sets.
#[derive(Clone, Debug)]
pub struct G3kCertificate {
    pub certificate: IndependentSetCertificate,
    /// Vertices with two or more neighbours in `Y`.
    pub z1: VertexSet,
    /// Union of the König covers of the bipartite graphs `H_xy`.
    pub z2: VertexSet,
}

/// For a triangle-free `h` and a set `y` independent in `h^k_{<=3}`, builds
/// an independent subset of `N(Y)`.
///
/// Vertices seen from two members of `Y` are dropped (`Z1`). For each pair
/// `x, y` the edges between `N(x) \ Z1` and `N(y) \ Z1` form a bipartite graph
/// with no matching of size `k` (a matching edge `ab` would give the path
/// `x a b y`), so a vertex cover of size at most `k - 1` removes them all.
pub fn g3k_certificate(h: &Graph, k: usize, y: &VertexSet) -> Result<G3kCertificate> {
    if k == 0 {
        return Err(input_err!("k must be a positive integer"));
    }
    if y.is_empty() {
        return Err(input_err!("Y must be non-empty"));
    }
    h.check_set(y)?;
    if let Some((a, b, c)) = h.find_triangle() {
        return Err(input_err!("H is not triangle-free: ({a}, {b}, {c})"));
    }
    let ys = y.as_slice();
    for (i, &a) in ys.iter().enumerate() {
        for &b in &ys[i + 1..] {
            let paths = max_disjoint_short_paths(h, a, b)?.len();
            if h.has_edge(a, b) || paths >= k {
                return Err(input_err!("Y is not independent in the power graph: {a} and {b} ({paths} short paths, k = {k})"));
            }
        }
    }

    let mut hits = vec![0usize; h.n()];
    for x in y.iter() {
        for &u in h.neighbors(x) {
            hits[u] += 1;
        }
    }
    let z1: VertexSet = h.vertices().filter(|&v| hits[v] >= 2).collect();
    let private = |x| -> VertexSet { h.neighbors(x).iter().copied().filter(|&u| hits[u] == 1).collect() };

    let mut z2 = Vec::new();
    for (i, &a) in ys.iter().enumerate() {
        let na = private(a);
        for &b in &ys[i + 1..] {
            let nb = private(b);
            let sub = h.induced_subgraph(&na.union(&nb))?;
            let left: VertexSet = (0..sub.graph.n()).filter(|&l| na.contains(sub.host_id(l))).collect();
            let cover = bipartite_min_vertex_cover(&sub.graph, &left)?;
            if cover.cover.len() + 1 > k {
                return Err(validation_err!(
                    "cover for pair ({a}, {b}) has {} vertices, more than k - 1 = {}",
                    cover.cover.len(),
                    k - 1
                ));
            }
            z2.extend(sub.lift(&cover.cover).iter());
        }
    }
    let z2: VertexSet = z2.into_iter().collect();
    let bound = (k - 1) * ys.len() * ys.len();
    if z2.len() > bound {
        return Err(validation_err!("|Z2| = {} exceeds (k-1)|Y|^2 = {bound}", z2.len()));
    }

    let neighborhood: VertexSet = y.iter().flat_map(|x| h.neighbors(x).iter().copied()).collect();
    let members = neighborhood.difference(&z1).difference(&z2);
    let certificate = IndependentSetCertificate::new(h, members, Provenance::G3kCertificate)?;
    Ok(G3kCertificate { certificate, z1, z2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn singleton_y_returns_whole_neighbourhood() {
        let pet = named::petersen();
        let out = g3k_certificate(&pet, 1, &VertexSet::singleton(0)).unwrap();
        assert!(out.z1.is_empty() && out.z2.is_empty());
        assert_eq!(out.certificate.members, VertexSet::from([1, 4, 5]));
    }

    #[test]
    fn c6_opposite_vertices() {
        let c6 = named::cycle(6);
        // two disjoint length-3 paths join 0 and 3, so k = 2 is rejected
        assert!(g3k_certificate(&c6, 2, &VertexSet::from([0, 3])).is_err());
        let out = g3k_certificate(&c6, 3, &VertexSet::from([0, 3])).unwrap();
        assert!(out.z1.is_empty());
        // H_xy is the matching {1-2, 5-4}; its cover has two vertices
        assert_eq!(out.z2.len(), 2);
        assert_eq!(out.certificate.len(), 2);
        out.certificate.verify(&c6).unwrap();
    }

    #[test]
    fn precondition_violations() {
        assert!(g3k_certificate(&named::complete(3), 1, &VertexSet::singleton(0)).is_err());
        assert!(g3k_certificate(&named::cycle(5), 1, &VertexSet::new()).is_err());
        assert!(g3k_certificate(&named::cycle(5), 1, &VertexSet::from([0, 1])).is_err());
        assert!(g3k_certificate(&named::cycle(5), 0, &VertexSet::singleton(0)).is_err());
    }
}
