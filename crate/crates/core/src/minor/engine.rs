//! Randomized extraction of a dense minor from a graph whose short-path power
//! graph is dense.
//!
//! One round samples anchors `X` with probability `p`, marks vertices with
//! too many anchor neighbours as blocked, and lets every remaining vertex
//! next to `X` join the branch of a uniformly chosen anchor neighbour. Each
//! branch is a star around its anchor, so the model is connected by
//! construction; it is validated anyway before anything is reported.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{quotient_graph, validate_minor_model, MinorCertificate, MinorModel};
use super::params::{derive_params_with, Constants, Params};
use crate::error::{input_err, Result};
use crate::graph::{BallSearch, Graph, Subgraph, Vertex, VertexSet};
use crate::paths::qualifying_pairs;
use crate::rng;

/// `e^{-pm/3}`, the bound on `P(Bin(m, p) > 2pm)`.
pub fn chernoff_tail_bound(p: f64, m: u64) -> f64 {
    (-p * m as f64 / 3.0).exp()
}

/// Neighbour count in `X` above which a vertex is blocked.
pub fn blocked_threshold(p: f64, degree: usize) -> f64 {
    2.0 * p * (degree as f64 - 2.0) + 2.0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchors {
    pub x: VertexSet,
    pub blocked: VertexSet,
}

/// Samples `X` by independent coin flips and derives the blocked set
/// `X ∪ {z : |N(z) ∩ X| > 2p(deg z - 2) + 2}`.
pub fn sample_anchors(g: &Graph, p: f64, seed: u64) -> Result<Anchors> {
    sample_anchors_round(g, p, seed, 0)
}

fn sample_anchors_round(g: &Graph, p: f64, seed: u64, round: u64) -> Result<Anchors> {
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("anchor probability {p} outside [0, 1]"));
    }
    let mut rng = rng::stream(seed, "anchors", round);
    let in_x: Vec<bool> = g.vertices().map(|_| rng.gen::<f64>() < p).collect();
    let blocked = g.vertices().filter(|&z| {
        in_x[z] || g.neighbors(z).iter().filter(|&&u| in_x[u]).count() as f64 > blocked_threshold(p, g.degree(z))
    });
    Ok(Anchors {
        x: g.vertices().filter(|&v| in_x[v]).collect(),
        blocked: blocked.collect(),
    })
}

/// The auxiliary graph on `X`: anchors are joined when adjacent in `g` or
/// linked by at least `ceil(k/2)` disjoint short paths with unblocked
/// interiors. Local vertex `i` is anchor `X[i]`.
pub fn viable_edge_graph(g: &Graph, k: usize, x: &VertexSet, blocked: &VertexSet) -> Result<Subgraph> {
    if k == 0 {
        return Err(input_err!("k must be a positive integer"));
    }
    g.check_set(x)?;
    g.check_set(blocked)?;
    let need = k.div_ceil(2);
    let pairs = qualifying_pairs(g, need, &blocked.mask(g.n()), Some(&x.mask(g.n())));
    let local = |v: Vertex| x.as_slice().binary_search(&v).expect("endpoint is an anchor");
    let graph = Graph::from_edges(x.len(), pairs.into_iter().map(|(u, v)| (local(u), local(v))))?;
    Ok(Subgraph { graph, to_host: x.as_slice().to_vec() })
}

/// Each unblocked vertex outside `X` with an anchor neighbour joins the branch
/// of one such neighbour chosen uniformly at random. Branch `i` is centred at
/// `X[i]`.
pub fn randomized_contraction(g: &Graph, x: &VertexSet, blocked: &VertexSet, seed: u64) -> Result<MinorModel> {
    contraction_round(g, x, blocked, seed, 0)
}

fn contraction_round(g: &Graph, x: &VertexSet, blocked: &VertexSet, seed: u64, round: u64) -> Result<MinorModel> {
    if x.is_empty() {
        return Err(input_err!("randomized contraction needs at least one anchor"));
    }
    g.check_set(x)?;
    g.check_set(blocked)?;
    let mut rng = rng::stream(seed, "contract", round);
    let mut branches: Vec<Vec<Vertex>> = x.iter().map(|c| vec![c]).collect();
    let mut choices = Vec::new();
    for z in g.vertices() {
        if x.contains(z) || blocked.contains(z) {
            continue;
        }
        choices.clear();
        choices.extend(g.neighbors(z).iter().copied().filter(|&u| x.contains(u)));
        if !choices.is_empty() {
            let centre = choices[rng.gen_range(0..choices.len())];
            let slot = x.as_slice().binary_search(&centre).expect("centre is an anchor");
            branches[slot].push(z);
        }
    }
    Ok(MinorModel::new(branches))
}

/// Deletes branches of minimum quotient degree one at a time and keeps the
/// densest intermediate model. Deleting branch sets yields a minor of the
/// same host, so the result is still a valid model.
pub fn densest_sub_model(host: &Graph, model: &MinorModel) -> MinorModel {
    let q = quotient_graph(host, model);
    if q.n() == 0 {
        return model.clone();
    }
    let mut degree: Vec<usize> = q.vertices().map(|v| q.degree(v)).collect();
    let mut alive = vec![true; q.n()];
    let mut buckets: std::collections::BTreeSet<(usize, usize)> =
        q.vertices().map(|v| (degree[v], v)).collect();
    let (mut n, mut m) = (q.n(), q.m());
    let mut removal = Vec::with_capacity(q.n());
    let (mut best_avg, mut best_removed) = (2.0 * m as f64 / n as f64, 0);
    while n > 1 {
        let (_, v) = buckets.pop_first().expect("non-empty");
        alive[v] = false;
        removal.push(v);
        n -= 1;
        m -= degree[v];
        for &u in q.neighbors(v) {
            if alive[u] {
                buckets.remove(&(degree[u], u));
                degree[u] -= 1;
                buckets.insert((degree[u], u));
            }
        }
        let avg = 2.0 * m as f64 / n as f64;
        if avg > best_avg {
            best_avg = avg;
            best_removed = removal.len();
        }
    }
    if best_removed == 0 {
        return model.clone();
    }
    let mut keep_mask = vec![true; q.n()];
    for &v in &removal[..best_removed] {
        keep_mask[v] = false;
    }
    let keep: Vec<usize> = (0..q.n()).filter(|&i| keep_mask[i]).collect();
    model.restrict(&keep)
}

/// Outcome of one sampling round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundSummary {
    pub round: u64,
    pub anchors: usize,
    pub blocked: usize,
    pub viable_edges: usize,
    pub branches: usize,
    pub achieved_average_degree: f64,
}

/// Everything an extraction run found, including rounds that fell short.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinorSearch {
    pub target: f64,
    /// Average degree of the densest sub-model of the all-singleton model.
    pub identity_average_degree: f64,
    pub rounds: Vec<RoundSummary>,
    /// Best validated certificate reaching `target`, if any.
    pub certificate: Option<MinorCertificate>,
}

/// Runs `trials` independent rounds and returns the best validated minor of
/// average degree at least `params.d`, if one was found. The all-singleton
/// model (pruned to its densest part) is always considered first.
pub fn extract_dense_minor(g: &Graph, params: &Params, trials: usize, seed: u64) -> Result<Option<MinorCertificate>> {
    Ok(search_dense_minor(g, params, trials, seed)?.certificate)
}

pub fn search_dense_minor(g: &Graph, params: &Params, trials: usize, seed: u64) -> Result<MinorSearch> {
    if trials == 0 {
        return Err(input_err!("at least one trial is required"));
    }
    if g.n() == 0 {
        return Err(input_err!("cannot extract a minor from the empty graph"));
    }
    let identity = validate_minor_model(g, &densest_sub_model(g, &MinorModel::identity(g.n())))?;

    let rounds: Vec<(RoundSummary, Option<MinorCertificate>)> = (0..trials as u64)
        .into_par_iter()
        .map(|round| run_round(g, params, seed, round))
        .collect::<Result<_>>()?;

    let mut best: Option<MinorCertificate> =
        (identity.achieved_average_degree >= params.d).then(|| identity.clone());
    let mut summaries = Vec::with_capacity(rounds.len());
    for (summary, cert) in rounds {
        summaries.push(summary);
        if let Some(cert) = cert.filter(|c| c.achieved_average_degree >= params.d) {
            if best.as_ref().is_none_or(|b| cert.achieved_average_degree > b.achieved_average_degree) {
                best = Some(cert);
            }
        }
    }
    Ok(MinorSearch {
        target: params.d,
        identity_average_degree: identity.achieved_average_degree,
        rounds: summaries,
        certificate: best,
    })
}

fn run_round(g: &Graph, params: &Params, seed: u64, round: u64) -> Result<(RoundSummary, Option<MinorCertificate>)> {
    let anchors = sample_anchors_round(g, params.p, seed, round)?;
    let mut summary = RoundSummary {
        round,
        anchors: anchors.x.len(),
        blocked: anchors.blocked.len(),
        viable_edges: 0,
        branches: 0,
        achieved_average_degree: 0.0,
    };
    if anchors.x.is_empty() {
        return Ok((summary, None));
    }
    summary.viable_edges = viable_edge_graph(g, params.k, &anchors.x, &anchors.blocked)?.graph.m();
    let model = contraction_round(g, &anchors.x, &anchors.blocked, seed, round)?;
    debug_assert!(model.branches.iter().all(|b| {
        let a = branch_anchor(b, &anchors.x);
        b.iter().all(|&z| z == a || g.has_edge(z, a))
    }));
    let cert = validate_minor_model(g, &densest_sub_model(g, &model))?;
    summary.branches = cert.quotient_n;
    summary.achieved_average_degree = cert.achieved_average_degree;
    Ok((summary, Some(cert)))
}

fn branch_anchor(branch: &[Vertex], x: &VertexSet) -> Vertex {
    branch.iter().copied().find(|&v| x.contains(v)).expect("every branch holds its anchor")
}

/// Result of the ball-size test that precedes the `k = 1` extraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallOutcome {
    /// `c_ball * d^{2+eps}`.
    pub threshold: f64,
    pub min_ball: usize,
    /// Lowest-id vertex attaining `min_ball`.
    pub witness: Vertex,
    /// Whether every radius-3 ball reached the threshold (and extraction ran).
    pub all_balls_large: bool,
    pub search: Option<MinorSearch>,
}

impl BallOutcome {
    pub fn certificate(&self) -> Option<&MinorCertificate> {
        self.search.as_ref().and_then(|s| s.certificate.as_ref())
    }
}

/// Sizes `|N^3[v]|` for every vertex.
pub fn radius3_ball_sizes(g: &Graph) -> Vec<usize> {
    let mut bfs = BallSearch::new(g.n());
    g.vertices().map(|v| bfs.ball(g, v, 3).len()).collect()
}

/// The `k = 1` specialisation: when every `|N^3[v]|` reaches
/// `c_ball * d^{2+eps}`, run [`extract_dense_minor`] with `k = 1`; otherwise
/// report the smallest ball and its centre.
pub fn dense_minor_via_balls(
    g: &Graph,
    d: f64,
    epsilon: f64,
    trials: usize,
    seed: u64,
    constants: &Constants,
) -> Result<BallOutcome> {
    if trials == 0 {
        return Err(input_err!("at least one trial is required"));
    }
    if g.n() == 0 {
        return Err(input_err!("cannot extract a minor from the empty graph"));
    }
    let threshold = constants.c_ball * d.powf(2.0 + epsilon);
    let sizes = radius3_ball_sizes(g);
    let (witness, &min_ball) = sizes
        .iter()
        .enumerate()
        .min_by_key(|&(v, &s)| (s, v))
        .expect("non-empty graph");
    let all_balls_large = min_ball as f64 >= threshold;
    let search = if all_balls_large {
        let params = derive_params_with(d, epsilon, 1, constants)?;
        Some(search_dense_minor(g, &params, trials, seed)?)
    } else {
        None
    };
    Ok(BallOutcome { threshold, min_ball, witness, all_balls_large, search })
}
