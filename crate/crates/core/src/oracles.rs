//! Exhaustive reference implementations for small instances.
//!
//! Nothing here is called from the algorithmic paths; the oracles exist to
//! cross-check them in tests and through the `oracle` CLI subcommand. Every
//! oracle refuses inputs over its [`OracleBudget`] instead of running
//! unboundedly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minor::MinorModel;

/// Hard ceiling for the bitmask independent-set search.
pub const MIS_HARD_CAP: usize = 40;
/// Hard ceiling for the clique-minor search.
pub const CLIQUE_MINOR_HARD_CAP: usize = 12;
/// Largest `m` accepted by [`exact_binomial_tail`].
pub const BINOMIAL_MAX_TRIALS: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Cap on the number of enumerated short paths per vertex pair.
    pub max_paths: usize,
    /// Cap on search-tree nodes; a deterministic stand-in for a time limit.
    pub max_search_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_vertices: 10, max_paths: 256, max_search_nodes: 50_000_000 }
    }
}

impl OracleBudget {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Self { max_vertices, ..Self::default() }
    }

    fn admit(&self, g: &Graph, hard_cap: usize, what: &str) -> Result<()> {
        let limit = self.max_vertices.min(hard_cap);
        if g.n() > limit {
            return Err(Error::Refused(format!("{what}: {} vertices exceeds budget of {limit}", g.n())));
        }
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect()
}

/// Maximum independent set by include/exclude branching on a maximum-degree
/// vertex, pruned with a greedy lower bound and the edge-count upper bound
/// `alpha <= r - e / maxdeg`.
pub fn max_independent_set_exact(g: &Graph, budget: &OracleBudget) -> Result<VertexSet> {
    budget.admit(g, MIS_HARD_CAP, "max_independent_set_exact")?;
    let adj = adjacency_masks(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut search = MisSearch { adj: &adj, best: greedy_mis(&adj, all), nodes: 0, budget: budget.max_search_nodes };
    search.branch(all, 0)?;
    let witness: VertexSet = (0..g.n()).filter(|&v| search.best >> v & 1 == 1).collect();
    debug_assert!(g.is_independent(witness.as_slice()));
    Ok(witness)
}

fn greedy_mis(adj: &[u64], mut alive: u64) -> u64 {
    let mut chosen = 0;
    while alive != 0 {
        let v = (0..adj.len())
            .filter(|&v| alive >> v & 1 == 1)
            .min_by_key(|&v| (adj[v] & alive).count_ones())
            .unwrap();
        chosen |= 1 << v;
        alive &= !(adj[v] | 1 << v);
    }
    chosen
}

struct MisSearch<'a> {
    adj: &'a [u64],
    best: u64,
    nodes: u64,
    budget: u64,
}

impl MisSearch<'_> {
    fn branch(&mut self, alive: u64, chosen: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Refused("max_independent_set_exact: search-node budget exhausted".into()));
        }
        let best = self.best.count_ones();
        let have = chosen.count_ones();
        if alive == 0 {
            if have > best {
                self.best = chosen;
            }
            return Ok(());
        }
        let r = alive.count_ones();
        let (mut edges2, mut maxdeg, mut pivot) = (0u32, 0u32, 0usize);
        for v in (0..self.adj.len()).filter(|&v| alive >> v & 1 == 1) {
            let d = (self.adj[v] & alive).count_ones();
            edges2 += d;
            if d > maxdeg {
                maxdeg = d;
                pivot = v;
            }
        }
        if maxdeg == 0 {
            if have + r > best {
                self.best = chosen | alive;
            }
            return Ok(());
        }
        // alpha(remaining) <= r - e/maxdeg, with e = edges2 / 2
        let upper = r - (edges2 / 2).div_ceil(maxdeg);
        if have + upper <= best {
            return Ok(());
        }
        let lower = greedy_mis(self.adj, alive);
        if have + lower.count_ones() > best {
            self.best = chosen | lower;
        }
        self.branch(alive & !(self.adj[pivot] | 1 << pivot), chosen | 1 << pivot)?;
        self.branch(alive & !(1 << pivot), chosen)
    }
}

/// Every `u`-`v` path of length at most three, as vertex sequences.
pub fn enumerate_short_paths(g: &Graph, u: Vertex, v: Vertex) -> Vec<Vec<Vertex>> {
    let mut paths = Vec::new();
    if g.has_edge(u, v) {
        paths.push(vec![u, v]);
    }
    for &a in g.neighbors(u) {
        if a == v {
            continue;
        }
        if g.has_edge(a, v) {
            paths.push(vec![u, a, v]);
        }
        for &b in g.neighbors(a) {
            if b != u && b != v && g.has_edge(b, v) {
                paths.push(vec![u, a, b, v]);
            }
        }
    }
    paths
}

/// Size of a maximum internally disjoint packing, by exhaustive search over
/// subsets of the enumerated paths.
pub fn disjoint_short_paths_exact(g: &Graph, u: Vertex, v: Vertex, budget: &OracleBudget) -> Result<usize> {
    budget.admit(g, 64, "disjoint_short_paths_exact")?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::Input("endpoints must differ".into()));
    }
    let paths = enumerate_short_paths(g, u, v);
    if paths.len() > budget.max_paths {
        return Err(Error::Refused(format!(
            "disjoint_short_paths_exact: {} paths exceeds budget of {}",
            paths.len(),
            budget.max_paths
        )));
    }
    let interiors: Vec<u64> =
        paths.iter().map(|p| p[1..p.len() - 1].iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    fn best(interiors: &[u64], used: u64, nodes: &mut u64, cap: u64) -> Result<usize> {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::Refused("disjoint_short_paths_exact: search-node budget exhausted".into()));
        }
        let Some((&first, rest)) = interiors.split_first() else { return Ok(0) };
        let skip = best(rest, used, nodes, cap)?;
        if first & used == 0 {
            Ok(skip.max(1 + best(rest, used | first, nodes, cap)?))
        } else {
            Ok(skip)
        }
    }
    let mut nodes = 0;
    best(&interiors, 0, &mut nodes, budget.max_search_nodes)
}

/// `G^k_{<=3}` edge set by pairwise exhaustive packing.
pub fn short_path_power_exact(g: &Graph, k: usize, budget: &OracleBudget) -> Result<Vec<(Vertex, Vertex)>> {
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    budget.admit(g, 64, "short_path_power_exact")?;
    let mut edges = Vec::new();
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) || disjoint_short_paths_exact(g, u, v, budget)? >= k {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

/// `P(Binomial(m, p) > threshold)` by direct summation of the probability
/// mass function, each term evaluated in log space and summed smallest first.
pub fn exact_binomial_tail(p: f64, m: u64, threshold: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Input(format!("probability {p} outside [0, 1]")));
    }
    if m > BINOMIAL_MAX_TRIALS {
        return Err(Error::Refused(format!("exact_binomial_tail: m = {m} exceeds {BINOMIAL_MAX_TRIALS}")));
    }
    let first = if threshold < 0.0 { 0 } else { threshold.floor() as u64 + 1 };
    if first > m {
        return Ok(0.0);
    }
    if p == 0.0 {
        return Ok(if first == 0 { 1.0 } else { 0.0 });
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    // ln C(m, j) accumulated incrementally from ln C(m, 0) = 0
    let mut ln_choose = vec![0.0f64; m as usize + 1];
    for j in 1..=m as usize {
        ln_choose[j] = ln_choose[j - 1] + ((m as usize - j + 1) as f64).ln() - (j as f64).ln();
    }
    let mut terms: Vec<f64> = (first..=m)
        .map(|j| (ln_choose[j as usize] + j as f64 * lp + (m - j) as f64 * lq).exp())
        .collect();
    terms.sort_by(f64::total_cmp);
    Ok(terms.iter().sum::<f64>().min(1.0))
}

/// Exhaustive search for a `K_t` minor: each vertex is assigned to one of
/// `t` branch sets or left out, labels introduced in order of first use.
/// Returns a witness model when one exists.
pub fn has_clique_minor_exact(g: &Graph, t: usize, budget: &OracleBudget) -> Result<Option<MinorModel>> {
    budget.admit(g, CLIQUE_MINOR_HARD_CAP, "has_clique_minor_exact")?;
    if t == 0 {
        return Ok(Some(MinorModel::new(Vec::new())));
    }
    if t > g.n() {
        return Ok(None);
    }
    if g.m() < t * (t - 1) / 2 {
        return Ok(None);
    }
    let adj = adjacency_masks(g);
    let mut search = CliqueMinorSearch {
        adj: &adj,
        t,
        n: g.n(),
        labels: vec![usize::MAX; g.n()],
        nodes: 0,
        budget: budget.max_search_nodes,
    };
    let found = search.assign(0, 0)?;
    Ok(found.then(|| {
        let mut branches = vec![Vec::new(); t];
        for (v, &l) in search.labels.iter().enumerate() {
            if l != usize::MAX {
                branches[l].push(v);
            }
        }
        MinorModel::new(branches)
    }))
}

struct CliqueMinorSearch<'a> {
    adj: &'a [u64],
    t: usize,
    n: usize,
    labels: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueMinorSearch<'_> {
    fn assign(&mut self, v: usize, used_labels: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Refused("has_clique_minor_exact: search-node budget exhausted".into()));
        }
        if self.t - used_labels > self.n - v {
            return Ok(false);
        }
        if v == self.n {
            return Ok(self.is_clique_model());
        }
        let options = (used_labels + 1).min(self.t);
        for label in 0..options {
            self.labels[v] = label;
            if self.assign(v + 1, used_labels.max(label + 1))? {
                return Ok(true);
            }
        }
        self.labels[v] = usize::MAX;
        self.assign(v + 1, used_labels)
    }

    fn is_clique_model(&self) -> bool {
        let masks: Vec<u64> = (0..self.t)
            .map(|l| (0..self.n).filter(|&v| self.labels[v] == l).fold(0u64, |m, v| m | 1 << v))
            .collect();
        let connected = |mask: u64| {
            let mut seen = mask & mask.wrapping_neg();
            loop {
                let grow = (0..self.n)
                    .filter(|&v| seen >> v & 1 == 1)
                    .fold(seen, |acc, v| acc | (self.adj[v] & mask));
                if grow == seen {
                    return seen == mask;
                }
                seen = grow;
            }
        };
        let touches = |a: u64, b: u64| (0..self.n).any(|v| a >> v & 1 == 1 && self.adj[v] & b != 0);
        masks.iter().all(|&m| m != 0 && connected(m))
            && (0..self.t).all(|i| (i + 1..self.t).all(|j| touches(masks[i], masks[j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::minor::validate_minor_model;

    fn brute_force_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&s| {
                let members: Vec<_> = (0..g.n()).filter(|&v| s >> v & 1 == 1).collect();
                g.is_independent(&members)
            })
            .map(u32::count_ones)
            .max()
            .unwrap() as usize
    }

    #[test]
    fn known_independence_numbers() {
        let b = OracleBudget::default();
        for (g, alpha) in [(named::cycle(5), 2), (named::complete_bipartite(3, 3), 3), (named::petersen(), 4)] {
            let s = max_independent_set_exact(&g, &b).unwrap();
            assert_eq!(s.len(), alpha);
            assert!(g.is_independent(s.as_slice()));
            assert_eq!(brute_force_alpha(&g), alpha);
        }
    }

    #[test]
    fn refuses_over_budget() {
        let big = named::cycle(11);
        assert!(matches!(max_independent_set_exact(&big, &OracleBudget::default()), Err(Error::Refused(_))));
        assert!(max_independent_set_exact(&big, &OracleBudget::with_max_vertices(20)).is_ok());
        assert!(max_independent_set_exact(&named::cycle(41), &OracleBudget::with_max_vertices(100)).is_err());
        assert!(has_clique_minor_exact(&named::cycle(13), 3, &OracleBudget::with_max_vertices(20)).is_err());
        let tight = OracleBudget { max_search_nodes: 3, ..OracleBudget::default() };
        assert!(matches!(max_independent_set_exact(&named::petersen(), &tight), Err(Error::Refused(_))));
    }

    #[test]
    fn path_counts() {
        let b = OracleBudget::default();
        assert_eq!(disjoint_short_paths_exact(&named::cycle(5), 0, 1, &b).unwrap(), 1);
        assert_eq!(disjoint_short_paths_exact(&named::complete_bipartite(2, 3), 0, 1, &b).unwrap(), 3);
        let k1 = short_path_power_exact(&named::cycle(5), 1, &b).unwrap();
        assert_eq!(k1.len(), 10);
    }

    #[test]
    fn binomial_tail_edges() {
        assert_eq!(exact_binomial_tail(0.5, 2, 2.0).unwrap(), 0.0);
        assert_eq!(exact_binomial_tail(1.0, 5, 4.9).unwrap(), 1.0);
        assert_eq!(exact_binomial_tail(0.0, 5, -1.0).unwrap(), 1.0);
        // P(Bin(2, 1/2) > 0.5) = 3/4
        assert!((exact_binomial_tail(0.5, 2, 0.5).unwrap() - 0.75).abs() < 1e-15);
        let tail = exact_binomial_tail(0.05, 100, 10.0).unwrap();
        assert!(tail > 0.0 && tail <= (-5.0f64 / 3.0).exp());
        assert!(exact_binomial_tail(0.5, 10_001, 1.0).is_err());
    }

    #[test]
    fn clique_minors() {
        let b = OracleBudget::with_max_vertices(12);
        let k5 = named::complete(5);
        let w = has_clique_minor_exact(&k5, 5, &b).unwrap().unwrap();
        assert_eq!(validate_minor_model(&k5, &w).unwrap().quotient_m, 10);

        let c5 = named::cycle(5);
        let w = has_clique_minor_exact(&c5, 3, &b).unwrap().unwrap();
        assert_eq!(validate_minor_model(&c5, &w).unwrap().quotient_m, 3);
        assert!(has_clique_minor_exact(&c5, 4, &b).unwrap().is_none());

        let pet = named::petersen();
        let w = has_clique_minor_exact(&pet, 5, &b).unwrap().unwrap();
        let cert = validate_minor_model(&pet, &w).unwrap();
        assert_eq!((cert.quotient_n, cert.quotient_m), (5, 10));
    }
}
