//! Packings of internally vertex-disjoint paths of length at most three, and
//! the power graph that joins every pair admitting `k` of them.
//!
//! A packing between `u` and `v` is a unit-capacity flow on a layered
//! network: `u -> N(u) -> N(v) -> v`, where every intermediate vertex is split
//! into an in/out pair joined by a capacity-one arc. The direct edge `uv`, when
//! present, contributes one more path with no interior.
//!
//! A flow path may be longer than three edges (a vertex in `N(u) ∩ N(v)` can
//! appear on both layers), but its second vertex always lies in `N(v)`, so
//! every flow path shortcuts to a path of length at most three over a subset
//! of its vertices. Flow value and packing size therefore coincide.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{input_err, validation_err, Result};
use crate::graph::{BallSearch, Graph, Vertex, VertexSet};

/// Internally vertex-disjoint `u`-`v` paths, each with one to three edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPacking {
    pub endpoints: (Vertex, Vertex),
    pub paths: Vec<Vec<Vertex>>,
}

impl PathPacking {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks every path against `g`, their internal disjointness, and that
    /// no interior vertex is blocked.
    pub fn validate(&self, g: &Graph, blocked: &VertexSet) -> Result<()> {
        let (u, v) = self.endpoints;
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        let mut used = vec![false; g.n()];
        for path in &self.paths {
            if !(2..=4).contains(&path.len()) || path[0] != u || path[path.len() - 1] != v {
                return Err(validation_err!("{path:?} is not a short {u}-{v} path"));
            }
            if path.windows(2).any(|w| w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1])) {
                return Err(validation_err!("{path:?} uses a non-edge"));
            }
            let interior = &path[1..path.len() - 1];
            for (i, &w) in interior.iter().enumerate() {
                if w == u || w == v || interior[..i].contains(&w) {
                    return Err(validation_err!("{path:?} repeats a vertex"));
                }
                if blocked.contains(w) {
                    return Err(validation_err!("{path:?} passes through blocked vertex {w}"));
                }
                if std::mem::replace(&mut used[w], true) {
                    return Err(validation_err!("interior vertex {w} shared between paths"));
                }
            }
        }
        if self.paths.iter().filter(|p| p.len() == 2).count() > 1 {
            return Err(validation_err!("direct edge counted twice"));
        }
        Ok(())
    }
}

/// The graph `G^k_{<=3}` (optionally with blocked interiors) on the vertex set of its base.
#[derive(Clone, Debug)]
pub struct PowerGraph {
    pub k: usize,
    pub blocked: VertexSet,
    pub graph: Graph,
}

/// Maximum packing of internally disjoint `u`-`v` paths of length at most 3.
pub fn max_disjoint_short_paths(g: &Graph, u: Vertex, v: Vertex) -> Result<PathPacking> {
    max_disjoint_short_paths_avoiding(g, u, v, &VertexSet::new())
}

/// As [`max_disjoint_short_paths`], with `blocked` vertices forbidden as interiors.
pub fn max_disjoint_short_paths_avoiding(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    blocked: &VertexSet,
) -> Result<PathPacking> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_set(blocked)?;
    if u == v {
        return Err(input_err!("path packing needs distinct endpoints, got {u} twice"));
    }
    let mask = blocked.mask(g.n());
    let mut net = ShortPathNetwork::new(g.n());
    Ok(net.packing(g, u, v, &mask, usize::MAX))
}

/// Builds `G^k_{<=3}` with `blocked` vertices excluded from path interiors.
pub fn short_path_power(g: &Graph, k: usize, blocked: &VertexSet) -> Result<PowerGraph> {
    if k == 0 {
        return Err(input_err!("k must be a positive integer"));
    }
    g.check_set(blocked)?;
    let mask = blocked.mask(g.n());
    let pairs = qualifying_pairs(g, k, &mask, None);
    let graph = Graph::from_edges(g.n(), pairs)?;
    Ok(PowerGraph { k, blocked: blocked.clone(), graph })
}

/// All pairs `u < v` (restricted to `endpoints` when given) that are adjacent
/// in `g` or joined by at least `need` disjoint short paths with unblocked
/// interiors. Only pairs within distance three are examined.
pub(crate) fn qualifying_pairs(
    g: &Graph,
    need: usize,
    blocked: &[bool],
    endpoints: Option<&[bool]>,
) -> Vec<(Vertex, Vertex)> {
    let allowed = |x: Vertex| endpoints.is_none_or(|e| e[x]);
    let per_vertex: Vec<Vec<(Vertex, Vertex)>> = g
        .vertices()
        .into_par_iter()
        .map_init(
            || (CandidateScan::new(g.n()), ShortPathNetwork::new(g.n())),
            |(scan, net), u| {
                if !allowed(u) {
                    return Vec::new();
                }
                scan.candidates(g, u, blocked)
                    .iter()
                    .copied()
                    .filter(|&v| v > u && allowed(v))
                    .filter(|&v| {
                        g.has_edge(u, v) || need <= 1 || net.count_at_least(g, u, v, blocked, need)
                    })
                    .map(|v| (u, v))
                    .collect()
            },
        )
        .collect();
    let mut pairs: Vec<_> = per_vertex.into_iter().flatten().collect();
    pairs.sort_unstable();
    pairs
}

/// Vertices reachable from `u` by a walk of length <= 3 whose interior avoids blocked vertices.
struct CandidateScan {
    stamp: Vec<u32>,
    epoch: u32,
    found: Vec<Vertex>,
}

impl CandidateScan {
    fn new(n: usize) -> Self {
        Self { stamp: vec![0; n], epoch: 0, found: Vec::new() }
    }

    fn candidates(&mut self, g: &Graph, u: Vertex, blocked: &[bool]) -> &[Vertex] {
        self.epoch += 1;
        self.found.clear();
        self.stamp[u] = self.epoch;
        let mut frontier: Vec<Vertex> = vec![u];
        for depth in 0..3 {
            let mut next = Vec::new();
            for &x in &frontier {
                if depth > 0 && blocked[x] {
                    continue;
                }
                for &y in g.neighbors(x) {
                    if self.stamp[y] != self.epoch {
                        self.stamp[y] = self.epoch;
                        self.found.push(y);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        &self.found
    }
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    cap: u8,
}

/// Scratch space for the per-pair layered flow, reusable across pairs.
struct ShortPathNetwork {
    /// host vertex -> local slot, valid when `stamp == epoch`
    slot: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
    nodes: Vec<Vertex>,
    in_first: Vec<bool>,
    in_second: Vec<bool>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

impl ShortPathNetwork {
    fn new(n: usize) -> Self {
        Self {
            slot: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            nodes: Vec::new(),
            in_first: Vec::new(),
            in_second: Vec::new(),
            arcs: Vec::new(),
            out: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
        }
    }

    // Node layout: 0 = source, 1 = sink, 2 + 2i = in(i), 3 + 2i = out(i).
    fn build(&mut self, g: &Graph, u: Vertex, v: Vertex, blocked: &[bool]) {
        self.epoch += 1;
        self.nodes.clear();
        self.in_first.clear();
        self.in_second.clear();
        for (layer, &end, &other) in [(0, &u, &v), (1, &v, &u)] {
            for &w in g.neighbors(end) {
                if w == other || blocked[w] {
                    continue;
                }
                if self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.slot[w] = self.nodes.len();
                    self.nodes.push(w);
                    self.in_first.push(false);
                    self.in_second.push(false);
                }
                let i = self.slot[w];
                if layer == 0 {
                    self.in_first[i] = true;
                } else {
                    self.in_second[i] = true;
                }
            }
        }
        let node_count = 2 + 2 * self.nodes.len();
        self.arcs.clear();
        for list in &mut self.out {
            list.clear();
        }
        if self.out.len() < node_count {
            self.out.resize_with(node_count, Vec::new);
        }
        // Nodes are in first-layer order (ascending ids) then second-layer
        // newcomers; iterate by host id for a fixed augmentation order.
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_unstable_by_key(|&i| self.nodes[i]);
        for &i in &order {
            if self.in_first[i] {
                self.add_arc(0, 2 + 2 * i);
            }
        }
        for &i in &order {
            self.add_arc(2 + 2 * i, 3 + 2 * i);
            if self.in_second[i] {
                self.add_arc(3 + 2 * i, 1);
            }
            if self.in_first[i] {
                let a = self.nodes[i];
                for &b in g.neighbors(a) {
                    if b != u && b != v && self.stamp[b] == self.epoch {
                        let j = self.slot[b];
                        if self.in_second[j] {
                            self.add_arc(3 + 2 * i, 2 + 2 * j);
                        }
                    }
                }
            }
        }
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap: 1 });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
    }

    /// One BFS augmentation from source to sink; false when none exists.
    fn augment(&mut self) -> bool {
        let node_count = 2 + 2 * self.nodes.len();
        self.parent.clear();
        self.parent.resize(node_count, NONE);
        self.queue.clear();
        self.queue.push(0);
        self.parent[0] = usize::MAX - 1;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &id in &self.out[x] {
                let arc = self.arcs[id];
                if arc.cap > 0 && self.parent[arc.to] == NONE {
                    self.parent[arc.to] = id;
                    if arc.to == 1 {
                        let mut y = 1;
                        while y != 0 {
                            let id = self.parent[y];
                            self.arcs[id].cap -= 1;
                            self.arcs[id ^ 1].cap += 1;
                            y = self.arcs[id ^ 1].to;
                        }
                        return true;
                    }
                    self.queue.push(arc.to);
                }
            }
        }
        false
    }

    fn max_flow(&mut self, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment() {
            flow += 1;
        }
        flow
    }

    fn count_at_least(&mut self, g: &Graph, u: Vertex, v: Vertex, blocked: &[bool], need: usize) -> bool {
        let direct = usize::from(g.has_edge(u, v));
        if direct >= need {
            return true;
        }
        if direct + g.degree(u).min(g.degree(v)) < need {
            return false;
        }
        self.build(g, u, v, blocked);
        direct + self.max_flow(need - direct) >= need
    }

    fn packing(&mut self, g: &Graph, u: Vertex, v: Vertex, blocked: &[bool], limit: usize) -> PathPacking {
        let mut paths = Vec::new();
        if g.has_edge(u, v) {
            paths.push(vec![u, v]);
        }
        self.build(g, u, v, blocked);
        self.max_flow(limit);
        for &id in &self.out[0] {
            // forward arcs out of the source have even ids; saturated means used
            if id % 2 == 1 || self.arcs[id].cap != 0 {
                continue;
            }
            let i = (self.arcs[id].to - 2) / 2;
            let first = self.nodes[i];
            if self.in_second[i] {
                paths.push(vec![u, first, v]);
                continue;
            }
            let next = self.out[3 + 2 * i]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && self.arcs[a].cap == 0 && self.arcs[a].to != 2 + 2 * i)
                .map(|a| self.arcs[a].to)
                .expect("flow conservation at an interior vertex");
            debug_assert!(next != 1 && next >= 2 && next % 2 == 0);
            let second = self.nodes[(next - 2) / 2];
            paths.push(vec![u, first, second, v]);
        }
        PathPacking { endpoints: (u, v), paths }
    }
}

/// Distance-`<= radius` graph computed by plain BFS; `G^1_{<=3}` is the case radius 3.
pub fn distance_power(g: &Graph, radius: usize) -> Graph {
    let mut bfs = BallSearch::new(g.n());
    let mut edges = Vec::new();
    for u in g.vertices() {
        edges.extend(bfs.ball(g, u, radius).iter().filter(|&&v| v > u).map(|&v| (u, v)));
    }
    Graph::from_edges_merged(g.n(), edges).expect("pairs come from a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn cycle_adjacent_pair_has_single_path() {
        let c5 = named::cycle(5);
        let p = max_disjoint_short_paths(&c5, 0, 1).unwrap();
        assert_eq!(p.paths, vec![vec![0, 1]]);
        p.validate(&c5, &VertexSet::new()).unwrap();
        // 0 and 2: the path 0-1-2 plus 0-4-3-2
        let p = max_disjoint_short_paths(&c5, 0, 2).unwrap();
        assert_eq!(p.len(), 2);
        p.validate(&c5, &VertexSet::new()).unwrap();
    }

    #[test]
    fn k23_small_side() {
        let k23 = named::complete_bipartite(2, 3);
        let p = max_disjoint_short_paths(&k23, 0, 1).unwrap();
        assert_eq!(p.paths, vec![vec![0, 2, 1], vec![0, 3, 1], vec![0, 4, 1]]);
        let blocked = VertexSet::from([2, 3]);
        let p = max_disjoint_short_paths_avoiding(&k23, 0, 1, &blocked).unwrap();
        assert_eq!(p.paths, vec![vec![0, 4, 1]]);
        p.validate(&k23, &blocked).unwrap();
        assert!(max_disjoint_short_paths(&k23, 1, 1).is_err());
    }

    #[test]
    fn long_flow_paths_are_shortcut() {
        // u=0, v=1; 2 in N(u), 3 in N(u)∩N(v); flow may route 0-2-3-...; all
        // reported paths must still have at most three edges.
        let g = Graph::from_edges(6, [(0, 2), (0, 3), (1, 3), (2, 3), (3, 4), (1, 4), (2, 5), (5, 1)]).unwrap();
        let p = max_disjoint_short_paths(&g, 0, 1).unwrap();
        p.validate(&g, &VertexSet::new()).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn small_power_graphs() {
        let c5 = named::cycle(5);
        assert_eq!(short_path_power(&c5, 1, &VertexSet::new()).unwrap().graph, named::complete(5));

        let p5 = named::path(5);
        let cube = short_path_power(&p5, 1, &VertexSet::new()).unwrap().graph;
        assert_eq!(cube.m(), 9);
        assert!(!cube.has_edge(0, 4));
        assert!(cube.has_edge(0, 3));

        let k23 = named::complete_bipartite(2, 3);
        assert_eq!(short_path_power(&k23, 2, &VertexSet::new()).unwrap().graph, named::complete(5));
        assert!(short_path_power(&k23, 0, &VertexSet::new()).is_err());
    }

    #[test]
    fn k1_power_is_distance_three_graph() {
        let pet = named::petersen();
        assert_eq!(short_path_power(&pet, 1, &VertexSet::new()).unwrap().graph, distance_power(&pet, 3));
    }

    #[test]
    fn blocked_endpoints_are_still_endpoints() {
        // path 0-1-2: blocking the endpoints changes nothing, blocking 1 removes 0~2
        let p3 = named::path(3);
        let pw = short_path_power(&p3, 1, &VertexSet::from([0, 2])).unwrap();
        assert!(pw.graph.has_edge(0, 2));
        let pw = short_path_power(&p3, 1, &VertexSet::from([1])).unwrap();
        assert!(!pw.graph.has_edge(0, 2));
        assert!(pw.graph.has_edge(0, 1));
    }
}
