//! Immutable simple undirected graphs and the vertex-set queries built on them.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

/// Dense vertex identifier in `0..n`.
pub type Vertex = usize;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Wraps a vector that is already strictly increasing.
    pub(crate) fn from_sorted_unchecked(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self(members)
    }

    pub fn singleton(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        Self(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Boolean membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut members: Vec<Vertex> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(members: Vec<Vertex>) -> Self {
        members.into_iter().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(members: [Vertex; N]) -> Self {
        members.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
///
/// Construction validates that there are no loops, no repeated edges and no
/// out-of-range endpoints. The graph is never mutated afterwards, so it can be
/// shared freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// endpoints `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(input_err!("edge ({u}, {v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return Err(input_err!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(input_err!("duplicate edge ({u}, {})", w[0]));
            }
            m += list.len();
        }
        Ok(Self { adj, m: m / 2 })
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub fn from_edges_merged<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut pairs: Vec<(Vertex, Vertex)> =
            edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        Self::from_edges(n, pairs)
    }

    /// Trusted constructor for adjacency lists produced inside the crate.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let g = Self { adj, m };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(input_err!("vertex {v} out of range for graph on {} vertices", self.n()))
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Re-checks the structural invariants: symmetric sorted adjacency, no
    /// loops, no repeats, consistent edge count.
    pub fn check_invariants(&self) -> Result<()> {
        let mut half_sum = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(input_err!("adjacency of {u} is not strictly increasing"));
            }
            for &v in list {
                if v >= self.n() || v == u {
                    return Err(input_err!("bad neighbor {v} of {u}"));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(input_err!("asymmetric edge ({u}, {v})"));
                }
            }
            half_sum += list.len();
        }
        if half_sum != 2 * self.m {
            return Err(input_err!("edge count {} disagrees with adjacency", self.m));
        }
        Ok(())
    }

    /// `2m / n`; undefined for the graph with no vertices.
    pub fn average_degree(&self) -> Result<f64> {
        if self.n() == 0 {
            return Err(input_err!("average degree of the empty graph is undefined"));
        }
        Ok(2.0 * self.m as f64 / self.n() as f64)
    }

    /// Closed ball of radius `radius` around `v`.
    pub fn neighborhood_ball(&self, v: Vertex, radius: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut bfs = BallSearch::new(self.n());
        let mut members = bfs.ball(self, v, radius).to_vec();
        members.sort_unstable();
        Ok(VertexSet::from_sorted_unchecked(members))
    }

    /// `S` together with every vertex adjacent to some member of `S`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut mark = vec![false; self.n()];
        for v in s.iter() {
            mark[v] = true;
            for &u in self.neighbors(v) {
                mark[u] = true;
            }
        }
        Ok(VertexSet::from_sorted_unchecked(
            mark.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect(),
        ))
    }

    /// Lexicographically smallest triangle `(a, b, c)` with `a < b < c`.
    pub fn find_triangle(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for a in self.vertices() {
            for &b in self.neighbors(a).iter().filter(|&&b| b > a) {
                let common = sorted_intersection(self.neighbors(a), self.neighbors(b))
                    .find(|&c| c > b);
                if let Some(c) = common {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// True when no two members of `s` are adjacent.
    pub fn is_independent(&self, s: &[Vertex]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// `G[S]`, relabelled to `0..|S|` in increasing host-id order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Subgraph> {
        self.check_set(s)?;
        let mut local = vec![usize::MAX; self.n()];
        for (i, v) in s.iter().enumerate() {
            local[v] = i;
        }
        let adj = s
            .iter()
            .map(|v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect()
            })
            .collect();
        Ok(Subgraph { graph: Graph::from_sorted_adjacency(adj), to_host: s.as_slice().to_vec() })
    }

    /// `G - S`.
    pub fn without(&self, s: &VertexSet) -> Result<Subgraph> {
        self.check_set(s)?;
        let keep: VertexSet = self.vertices().filter(|&v| !s.contains(v)).collect();
        self.induced_subgraph(&keep)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n(), self.m)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// An induced subgraph together with its vertex relabelling.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    /// `to_host[i]` is the host id of local vertex `i`; strictly increasing.
    pub to_host: Vec<Vertex>,
}

impl Subgraph {
    pub fn host_id(&self, local: Vertex) -> Vertex {
        self.to_host[local]
    }

    pub fn local_id(&self, host: Vertex) -> Option<Vertex> {
        self.to_host.binary_search(&host).ok()
    }

    pub fn lift(&self, local: &VertexSet) -> VertexSet {
        VertexSet::from_sorted_unchecked(local.iter().map(|v| self.to_host[v]).collect())
    }

    /// Composes with an outer relabelling: `self` is a subgraph of `outer.graph`.
    pub fn compose(&self, outer: &Subgraph) -> Subgraph {
        Subgraph {
            graph: self.graph.clone(),
            to_host: self.to_host.iter().map(|&v| outer.to_host[v]).collect(),
        }
    }
}

/// Reusable BFS scratch space for repeated bounded-radius searches.
pub(crate) struct BallSearch {
    stamp: Vec<u32>,
    epoch: u32,
    order: Vec<Vertex>,
    queue: VecDeque<(Vertex, usize)>,
}

impl BallSearch {
    pub(crate) fn new(n: usize) -> Self {
        Self { stamp: vec![0; n], epoch: 0, order: Vec::new(), queue: VecDeque::new() }
    }

    /// Vertices within `radius` of `source`, in BFS order.
    pub(crate) fn ball(&mut self, g: &Graph, source: Vertex, radius: usize) -> &[Vertex] {
        self.epoch += 1;
        self.order.clear();
        self.queue.clear();
        self.stamp[source] = self.epoch;
        self.order.push(source);
        self.queue.push_back((source, 0));
        while let Some((v, dist)) = self.queue.pop_front() {
            if dist == radius {
                continue;
            }
            for &u in g.neighbors(v) {
                if self.stamp[u] != self.epoch {
                    self.stamp[u] = self.epoch;
                    self.order.push(u);
                    self.queue.push_back((u, dist + 1));
                }
            }
        }
        &self.order
    }
}

pub(crate) fn sorted_intersection<'a>(
    a: &'a [Vertex],
    b: &'a [Vertex],
) -> impl Iterator<Item = Vertex> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(a[i - 1]);
                }
            }
        }
        None
    })
}
