use serde::{Deserialize, Serialize};

use super::greedy::turan_greedy;
use super::{IndependentSetCertificate, Provenance};
use crate::error::{input_err, Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::minor::{dense_minor_via_balls, BallOutcome, Constants, MinorCertificate};

/// Default cap on `|A|` for the greedy growth in [`sparse_neighborhood_set`].
pub const DEFAULT_SET_CAP: usize = 8;

/// Looks for a non-empty independent `A ⊆ N^2[v]` with `|N[A]| <= tau * |A|`.
///
/// Singletons are tried first (the smallest-degree vertex of the ball is the
/// best one). Failing that, `A` grows greedily from that vertex by adding
/// the non-adjacent ball vertex that keeps `|N[A]|` smallest, up to `cap`
/// members. Any returned set satisfies the inequality.
pub fn sparse_neighborhood_set(g: &Graph, v: Vertex, tau: f64, cap: usize) -> Result<Option<VertexSet>> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(input_err!("tau must be positive, got {tau}"));
    }
    let mut ball = g.neighborhood_ball(v, 2)?.into_vec();
    ball.sort_by_key(|&u| (g.degree(u), u));
    let Some(&start) = ball.first() else { return Ok(None) };
    if (g.degree(start) + 1) as f64 <= tau {
        return Ok(Some(VertexSet::singleton(start)));
    }

    let mut covered = vec![false; g.n()];
    let mut blocked = vec![false; g.n()];
    let mut covered_count = 0;
    let mut members = Vec::new();
    let mut add = |u: Vertex, covered: &mut Vec<bool>, blocked: &mut Vec<bool>, count: &mut usize| {
        members.push(u);
        for &w in std::iter::once(&u).chain(g.neighbors(u)) {
            blocked[w] = true;
            if !covered[w] {
                covered[w] = true;
                *count += 1;
            }
        }
        members.clone()
    };
    add(start, &mut covered, &mut blocked, &mut covered_count);
    for _ in 1..cap {
        let gain = |u: Vertex| std::iter::once(&u).chain(g.neighbors(u)).filter(|&&w| !covered[w]).count();
        let best = ball.iter().copied().filter(|&u| !blocked[u]).min_by_key(|&u| (gain(u), u));
        let Some(u) = best else { break };
        let current = add(u, &mut covered, &mut blocked, &mut covered_count);
        if covered_count as f64 <= tau * current.len() as f64 {
            let set: VertexSet = current.into_iter().collect();
            debug_assert!(g.is_independent(set.as_slice()));
            return Ok(Some(set));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionConfig {
    pub d: f64,
    pub epsilon: f64,
    /// Ratio bound; defaults to `c_ball * d^{1-eps}`.
    pub tau: Option<f64>,
    pub minor_trials: usize,
    pub seed: u64,
    pub set_cap: usize,
    pub constants: Constants,
}

impl RecursionConfig {
    pub fn new(d: f64, epsilon: f64) -> Self {
        Self {
            d,
            epsilon,
            tau: None,
            minor_trials: 50,
            seed: 0,
            set_cap: DEFAULT_SET_CAP,
            constants: Constants::default(),
        }
    }

    pub fn effective_tau(&self) -> f64 {
        self.tau.unwrap_or_else(|| self.constants.c_ball * self.d.powf(1.0 - self.epsilon))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionOutcome {
    pub certificate: IndependentSetCertificate,
    pub tau: f64,
    /// Number of sparse sets `A` found and removed with their neighbourhoods.
    pub sets_found: usize,
    /// Residual size when the search first failed and the greedy fallback took over.
    pub fallback_residual: Option<usize>,
    /// Ball test run on the residual when the search failed.
    pub ball_check: Option<BallOutcome>,
    /// Dense minor found on the residual, in input-graph labels.
    pub minor: Option<MinorCertificate>,
    /// Whether the plain greedy set on the whole input beat the recursion.
    pub baseline_won: bool,
    pub notes: Vec<String>,
}

/// See [`recursive_independent_set_traced`].
pub fn recursive_independent_set(g: &Graph, config: &RecursionConfig) -> Result<IndependentSetCertificate> {
    Ok(recursive_independent_set_traced(g, config)?.certificate)
}

/// Iterative form of the neighbourhood-ratio induction: repeatedly find a
/// sparse independent set `A`, keep it and delete `N[A]`. When no such set
/// exists the residual gets a ball test (which may expose a dense minor) and
/// then the greedy set. The result is never smaller than [`turan_greedy`]
/// on the whole input.
pub fn recursive_independent_set_traced(g: &Graph, config: &RecursionConfig) -> Result<RecursionOutcome> {
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(input_err!("input is not triangle-free: ({a}, {b}, {c})"));
    }
    if config.set_cap == 0 {
        return Err(input_err!("set cap must be at least 1"));
    }
    let tau = config.effective_tau();
    let mut outcome = RecursionOutcome {
        certificate: IndependentSetCertificate { members: VertexSet::new(), provenance: Provenance::Recursion },
        tau,
        sets_found: 0,
        fallback_residual: None,
        ball_check: None,
        minor: None,
        baseline_won: false,
        notes: Vec::new(),
    };
    if g.n() == 0 {
        return Ok(outcome);
    }

    let all: VertexSet = g.vertices().collect();
    let mut residual = g.induced_subgraph(&all)?;
    let mut chosen: Vec<Vertex> = Vec::new();
    while residual.graph.n() > 0 {
        let r = &residual.graph;
        let mut order: Vec<Vertex> = r.vertices().collect();
        order.sort_by_key(|&v| (r.degree(v), v));
        let mut found = None;
        for v in order {
            if let Some(a) = sparse_neighborhood_set(r, v, tau, config.set_cap)? {
                found = Some(a);
                break;
            }
        }
        match found {
            Some(a) => {
                outcome.sets_found += 1;
                chosen.extend(residual.lift(&a).iter());
                let gone = r.closed_neighborhood(&a)?;
                residual = r.without(&gone)?.compose(&residual);
            }
            None => {
                outcome.fallback_residual = Some(r.n());
                match dense_minor_via_balls(r, config.d, config.epsilon, config.minor_trials, config.seed, &config.constants) {
                    Ok(ball) => {
                        if let Some(cert) = ball.certificate() {
                            let lifted = cert.model.lift(&residual);
                            outcome.minor = Some(crate::minor::validate_minor_model(g, &lifted)?);
                        }
                        outcome.ball_check = Some(ball);
                    }
                    Err(Error::Parameter(msg)) => outcome.notes.push(format!("ball-test extraction skipped: {msg}")),
                    Err(e) => return Err(e),
                }
                chosen.extend(turan_greedy(r)?.lift(&residual).members.iter());
                break;
            }
        }
    }

    let recursion = IndependentSetCertificate::new(g, chosen.into_iter().collect(), Provenance::Recursion)?;
    let baseline = turan_greedy(g)?;
    outcome.certificate = if baseline.len() > recursion.len() {
        outcome.baseline_won = true;
        baseline
    } else {
        recursion
    };
    Ok(outcome)
}
