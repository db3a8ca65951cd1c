use std::collections::VecDeque;

use crate::error::{input_err, validation_err, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub cover: VertexSet,
    /// A maximum matching as `(left, right)` pairs; same size as `cover`.
    pub matching: Vec<(Vertex, Vertex)>,
}

/// Minimum vertex cover of a bipartite graph with parts `left` and the rest,
/// via a maximum matching (augmenting paths) and König's construction.
pub fn bipartite_min_vertex_cover(b: &Graph, left: &VertexSet) -> Result<VertexCover> {
    b.check_set(left)?;
    let is_left = left.mask(b.n());
    if let Some((u, v)) = b.edges().find(|&(u, v)| is_left[u] == is_left[v]) {
        let side = if is_left[u] { "left" } else { "right" };
        return Err(input_err!("edge ({u}, {v}) lies inside the {side} part"));
    }

    const FREE: usize = usize::MAX;
    let mut mate = vec![FREE; b.n()];
    for root in left.iter() {
        // BFS for an augmenting path from `root`
        let mut parent = vec![FREE; b.n()];
        let mut queue = VecDeque::from([root]);
        let mut end = None;
        'search: while let Some(l) = queue.pop_front() {
            for &r in b.neighbors(l) {
                if parent[r] != FREE {
                    continue;
                }
                parent[r] = l;
                if mate[r] == FREE {
                    end = Some(r);
                    break 'search;
                }
                queue.push_back(mate[r]);
            }
        }
        let mut r = match end {
            Some(r) => r,
            None => continue,
        };
        loop {
            let l = parent[r];
            let next = mate[l];
            mate[l] = r;
            mate[r] = l;
            if l == root {
                break;
            }
            r = next;
        }
    }
    let matching: Vec<(Vertex, Vertex)> =
        left.iter().filter(|&l| mate[l] != FREE).map(|l| (l, mate[l])).collect();

    // König: Z = vertices reachable from unmatched left vertices by
    // alternating paths; cover = (L \ Z) ∪ (R ∩ Z).
    let mut reached = vec![false; b.n()];
    let mut queue: VecDeque<Vertex> = left.iter().filter(|&l| mate[l] == FREE).collect();
    for &l in &queue {
        reached[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in b.neighbors(l) {
            if !reached[r] {
                reached[r] = true;
                let m = mate[r];
                if m != FREE && !reached[m] {
                    reached[m] = true;
                    queue.push_back(m);
                }
            }
        }
    }
    let cover: VertexSet = b.vertices().filter(|&v| is_left[v] != reached[v]).collect();

    if cover.len() != matching.len() {
        return Err(validation_err!("König cover has {} vertices but matching has {}", cover.len(), matching.len()));
    }
    if let Some((u, v)) = b.edges().find(|&(u, v)| !cover.contains(u) && !cover.contains(v)) {
        return Err(validation_err!("edge ({u}, {v}) is not covered"));
    }
    Ok(VertexCover { cover, matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn examples() {
        let k33 = named::complete_bipartite(3, 3);
        let c = bipartite_min_vertex_cover(&k33, &VertexSet::from([0, 1, 2])).unwrap();
        assert_eq!(c.cover.len(), 3);
        assert_eq!(c.matching.len(), 3);

        let p3 = named::path(3);
        let c = bipartite_min_vertex_cover(&p3, &VertexSet::singleton(1)).unwrap();
        assert_eq!(c.cover, VertexSet::singleton(1));
    }

    #[test]
    fn rejects_edges_inside_a_part() {
        let p3 = named::path(3);
        assert!(bipartite_min_vertex_cover(&p3, &VertexSet::from([0, 1])).is_err());
    }

    #[test]
    fn edgeless_graph_has_empty_cover() {
        let c = bipartite_min_vertex_cover(&Graph::empty(4), &VertexSet::from([0, 1])).unwrap();
        assert!(c.cover.is_empty() && c.matching.is_empty());
    }
}
