//! The end-to-end dichotomy: given a triangle-free graph and a clique size
//! `t`, produce either a minor of average degree at least
//! `d = t * sqrt(ln t) / 3` or an independent set, each with a certificate
//! that is re-checked against the input before it is returned.
//!
//! Stages, in order:
//!
//! 1. whole graph: if some subgraph already has average degree `>= d`, that
//!    subgraph (as a minor with singleton branches) is the answer;
//! 2. strip every vertex of degree `>= 2d`;
//! 3. radius-3 ball test and, if all balls are large, `k = 1` extraction;
//! 4. at the smallest ball: peel `G[N^2[v]]`, build its short-path power
//!    graph and, if that is dense enough, run the extraction with large `k`;
//! 5. neighbourhood-ratio recursion on the stripped graph, which always
//!    yields an independent set.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{input_err, validation_err, Error, Result};
use crate::graph::{Graph, Subgraph};
use crate::indep::{
    peel_low_degree, recursive_independent_set_traced, strip_high_degree, IndependentSetCertificate,
    RecursionConfig,
};
use crate::io::canonical_hash;
use crate::minor::{
    dense_minor_via_balls, densest_sub_model, derive_params_with, search_dense_minor, validate_minor_model,
    Constants, MinorCertificate, MinorModel,
};
use crate::paths::short_path_power;
use crate::rng::derive_seed;

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;

/// Upper end of the admissible `epsilon` range.
pub const EPSILON_LIMIT: f64 = 1.0 / 26.0;

/// Average degree that forces a `K_t` minor for large `t`:
/// `t * sqrt(ln t) / 3`, natural logarithm.
pub fn thomason_threshold(t: usize) -> Result<f64> {
    if t < 2 {
        return Err(input_err!("t must be at least 2, got {t}"));
    }
    let t = t as f64;
    Ok(t * t.ln().sqrt() / 3.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DichotomyConfig {
    pub t: usize,
    pub epsilon: f64,
    /// Replacements for named constants, e.g. `c_ball`.
    #[serde(default)]
    pub constant_overrides: BTreeMap<String, f64>,
    pub trials: usize,
    pub seed: u64,
}

impl DichotomyConfig {
    pub fn new(t: usize, epsilon: f64) -> Self {
        Self { t, epsilon, constant_overrides: BTreeMap::new(), trials: 50, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_override(mut self, key: &str, value: f64) -> Self {
        self.constant_overrides.insert(key.to_string(), value);
        self
    }

    /// Defaults with the overrides applied; rejects unknown keys.
    pub fn constants(&self) -> Result<Constants> {
        let mut c = Constants::default();
        for (key, &value) in &self.constant_overrides {
            c.set(key, value)?;
        }
        Ok(c)
    }

    pub fn validate(&self) -> Result<Constants> {
        thomason_threshold(self.t)?;
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(input_err!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        if self.trials == 0 {
            return Err(input_err!("trials must be positive"));
        }
        self.constants()
    }

    /// `(epsilon + 1/26) / 2`.
    pub fn epsilon_prime(&self) -> f64 {
        (self.epsilon + EPSILON_LIMIT) / 2.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "certificate", rename_all = "snake_case")]
pub enum Outcome {
    Minor(MinorCertificate),
    IndependentSet(IndependentSetCertificate),
}

impl Outcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            Outcome::Minor(_) => OutcomeKind::Minor,
            Outcome::IndependentSet(_) => OutcomeKind::IndependentSet,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Minor,
    IndependentSet,
}

/// One pipeline stage and the figures it produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DichotomyResult {
    pub outcome: Outcome,
    pub d_target: f64,
    /// `n / t^{1-eps}`.
    pub bound_claimed: f64,
    /// For an independent set `S`: `|S| * t^{1-eps} / n`; for a minor: its
    /// average degree over `d_target`. At least 1 means the claim is met.
    pub bound_achieved: f64,
    pub preconditions_met: bool,
    pub trace: Vec<StageRecord>,
}

impl DichotomyResult {
    /// Re-checks the embedded certificate against `g` from scratch.
    pub fn revalidate(&self, g: &Graph) -> Result<()> {
        match &self.outcome {
            Outcome::Minor(cert) => {
                let fresh = cert.revalidate(g)?;
                if fresh.achieved_average_degree < self.d_target {
                    return Err(validation_err!(
                        "minor has average degree {} below target {}",
                        fresh.achieved_average_degree,
                        self.d_target
                    ));
                }
                Ok(())
            }
            Outcome::IndependentSet(cert) => cert.verify(g),
        }
    }
}

fn record(trace: &mut Vec<StageRecord>, stage: &str, detail: Value) {
    trace.push(StageRecord { stage: stage.to_string(), detail });
}

/// Runs the staged dichotomy on a triangle-free graph.
pub fn dichotomy(g: &Graph, config: &DichotomyConfig) -> Result<DichotomyResult> {
    let constants = config.validate()?;
    if g.n() == 0 {
        return Err(input_err!("the dichotomy needs at least one vertex"));
    }
    if let Some((a, b, c)) = g.find_triangle() {
        return Err(input_err!("input is not triangle-free: ({a}, {b}, {c})"));
    }
    let n = g.n() as f64;
    let t = config.t as f64;
    let d = thomason_threshold(config.t)?;
    let eps = config.epsilon;
    let eps_p = config.epsilon_prime();
    let bound_claimed = n / t.powf(1.0 - eps);

    let eps_ok = eps < EPSILON_LIMIT;
    let scale_ok = d.powf(1.0 - 26.0 * eps_p) >= 1e7;
    let final_ok = t.powf(1.0 - eps) >= constants.c_final * d.powf(1.0 - eps_p);
    let preconditions_met = eps_ok && scale_ok && final_ok;

    let mut trace = Vec::new();
    record(
        &mut trace,
        "setup",
        json!({
            "n": g.n(), "m": g.m(), "t": config.t, "epsilon": eps, "epsilon_prime": eps_p,
            "d": d, "log_base": "natural", "constants": constants, "seed": config.seed,
            "trials": config.trials,
            "preconditions": {
                "epsilon_below_1_over_26": eps_ok,
                "d_pow_1_minus_26eps_prime_at_least_1e7": scale_ok,
                "t_pow_1_minus_eps_at_least_c_final_d_pow_1_minus_eps_prime": final_ok,
            },
            "target_alpha_bound": n / (constants.c_final * d.powf(1.0 - eps_p)),
        }),
    );

    let finish_minor = |cert: MinorCertificate, trace: Vec<StageRecord>| -> Result<DichotomyResult> {
        let fresh = validate_minor_model(g, &cert.model)?;
        let result = DichotomyResult {
            bound_achieved: fresh.achieved_average_degree / d,
            outcome: Outcome::Minor(fresh),
            d_target: d,
            bound_claimed,
            preconditions_met,
            trace,
        };
        result.revalidate(g)?;
        Ok(result)
    };

    // Stage 1: the graph itself (or its densest part) as a minor.
    let densest = validate_minor_model(g, &densest_sub_model(g, &MinorModel::identity(g.n())))?;
    let avg = g.average_degree()?;
    record(
        &mut trace,
        "whole_graph",
        json!({ "average_degree": avg, "densest_subgraph_average_degree": densest.achieved_average_degree, "target": d }),
    );
    if densest.achieved_average_degree >= d {
        return finish_minor(densest, trace);
    }

    // Stage 2: drop vertices of degree >= 2d.
    let stripped = strip_high_degree(g, d)?;
    let rest = &stripped.rest;
    record(
        &mut trace,
        "strip_high_degree",
        json!({
            "removed": stripped.removed.len(), "remaining_n": rest.graph.n(), "remaining_m": rest.graph.m(),
            "removed_at_most_half": 2 * stripped.removed.len() <= g.n(),
        }),
    );

    if rest.graph.n() > 0 {
        // Stage 3: ball test with k = 1 extraction.
        let ball_seed = derive_seed(config.seed, "ball_test", 0);
        let balls = dense_minor_via_balls(&rest.graph, d, eps_p, config.trials, ball_seed, &constants);
        let witness = match balls {
            Ok(ball) => {
                record(
                    &mut trace,
                    "ball_test",
                    json!({
                        "seed": ball_seed, "threshold": ball.threshold, "min_ball": ball.min_ball,
                        "witness": rest.host_id(ball.witness), "all_balls_large": ball.all_balls_large,
                        "rounds": ball.search.as_ref().map(|s| s.rounds.len()),
                        "found": ball.certificate().is_some(),
                    }),
                );
                if let Some(cert) = ball.certificate() {
                    return finish_minor(lift_certificate(g, cert, rest)?, trace);
                }
                Some(ball.witness)
            }
            Err(Error::Parameter(msg)) => {
                record(&mut trace, "ball_test", json!({ "seed": ball_seed, "skipped": msg }));
                None
            }
            Err(e) => return Err(e),
        };

        // Stage 4: peel the radius-2 ball of the witness and test its power graph.
        if let Some(v) = witness {
            if let Some(cert) = small_alpha_stage(g, rest, v, d, eps_p, config, &constants, &mut trace)? {
                return finish_minor(cert, trace);
            }
        }
    }

    // Stage 5: the recursion always produces an independent set.
    let rec_config = RecursionConfig {
        d,
        epsilon: eps_p,
        tau: None,
        minor_trials: config.trials,
        seed: derive_seed(config.seed, "recursion", 0),
        set_cap: crate::indep::DEFAULT_SET_CAP,
        constants,
    };
    let rec = recursive_independent_set_traced(&rest.graph, &rec_config)?;
    record(
        &mut trace,
        "recursion",
        json!({
            "seed": rec_config.seed, "tau": rec.tau, "sets_found": rec.sets_found,
            "fallback_residual": rec.fallback_residual, "baseline_won": rec.baseline_won,
            "size": rec.certificate.len(), "minor_found": rec.minor.is_some(), "notes": rec.notes,
        }),
    );
    if let Some(cert) = &rec.minor {
        if cert.achieved_average_degree >= d {
            return finish_minor(lift_certificate(g, cert, rest)?, trace);
        }
    }
    let members = rec.certificate.lift(rest);
    let cert = IndependentSetCertificate::new(g, members.members, members.provenance)?;
    let result = DichotomyResult {
        bound_achieved: cert.len() as f64 * t.powf(1.0 - eps) / n,
        outcome: Outcome::IndependentSet(cert),
        d_target: d,
        bound_claimed,
        preconditions_met,
        trace,
    };
    result.revalidate(g)?;
    Ok(result)
}

fn lift_certificate(g: &Graph, cert: &MinorCertificate, sub: &Subgraph) -> Result<MinorCertificate> {
    validate_minor_model(g, &cert.model.lift(sub))
}

#[allow(clippy::too_many_arguments)]
fn small_alpha_stage(
    g: &Graph,
    rest: &Subgraph,
    witness: usize,
    d: f64,
    eps_p: f64,
    config: &DichotomyConfig,
    constants: &Constants,
    trace: &mut Vec<StageRecord>,
) -> Result<Option<MinorCertificate>> {
    let beta = 2.0 * eps_p;
    let gamma = 2.0 * eps_p;
    let ball = rest.graph.neighborhood_ball(witness, 2)?;
    let local = rest.graph.induced_subgraph(&ball)?;
    let d0 = d.powf(1.0 - beta - gamma).floor() as usize;
    let peeled = peel_low_degree(&local.graph, d0)?;
    let core = peeled.core.compose(&local).compose(rest);
    let k = ((d.powf(1.0 - 3.0 * beta - 2.0 * gamma) / constants.c_paths_div).floor() as usize).max(1);
    let target = d.powf(2.0 - 2.0 * beta - 2.0 * gamma) / 4.0;
    let mut detail = json!({
        "witness": rest.host_id(witness), "beta": beta, "gamma": gamma, "ball2_size": ball.len(),
        "d0": d0, "core_n": core.graph.n(), "peel_centers": peeled.centers.len(), "k": k, "target": target,
    });
    if core.graph.n() == 0 {
        detail["attempted"] = json!(false);
        record(trace, "small_alpha", detail);
        return Ok(None);
    }
    let power = short_path_power(&core.graph, k, &Default::default())?;
    let power_avg = power.graph.average_degree()?;
    detail["power_average_degree"] = json!(power_avg);
    if power_avg < target {
        detail["attempted"] = json!(false);
        record(trace, "small_alpha", detail);
        return Ok(None);
    }
    let params = match derive_params_with(d, beta + gamma, k, constants) {
        Ok(p) => p,
        Err(Error::Parameter(msg)) => {
            detail["attempted"] = json!(false);
            detail["skipped"] = json!(msg);
            record(trace, "small_alpha", detail);
            return Ok(None);
        }
        Err(e) => return Err(e),
    };
    let seed = derive_seed(config.seed, "small_alpha", 0);
    let search = search_dense_minor(&core.graph, &params, config.trials, seed)?;
    detail["attempted"] = json!(true);
    detail["seed"] = json!(seed);
    detail["params"] = serde_json::to_value(params).expect("params serialise");
    detail["rounds"] = json!(search.rounds.len());
    detail["found"] = json!(search.certificate.is_some());
    record(trace, "small_alpha", detail);
    search.certificate.map(|c| lift_certificate(g, &c, &core)).transpose()
}

/// Machine-readable report of one dichotomy run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub input_hash: String,
    pub config: DichotomyConfig,
    pub outcome: OutcomeKind,
    pub certificate: Certificate,
    pub d_target: f64,
    pub bound_claimed: f64,
    pub bound_achieved: f64,
    pub preconditions_met: bool,
    pub revalidated: bool,
    pub trace: Vec<StageRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Minor(MinorCertificate),
    IndependentSet(IndependentSetCertificate),
}

impl Report {
    /// Packages a result, re-checking its certificate against `g`.
    pub fn new(g: &Graph, config: &DichotomyConfig, result: &DichotomyResult) -> Self {
        let certificate = match &result.outcome {
            Outcome::Minor(c) => Certificate::Minor(c.clone()),
            Outcome::IndependentSet(c) => Certificate::IndependentSet(c.clone()),
        };
        Self {
            version: REPORT_VERSION,
            input_hash: canonical_hash(g),
            config: config.clone(),
            outcome: result.outcome.kind(),
            certificate,
            d_target: result.d_target,
            bound_claimed: result.bound_claimed,
            bound_achieved: result.bound_achieved,
            preconditions_met: result.preconditions_met,
            revalidated: result.revalidate(g).is_ok(),
            trace: result.trace.clone(),
        }
    }

    /// Recovers the result this report was built from.
    pub fn to_result(&self) -> Result<DichotomyResult> {
        let outcome = match (&self.outcome, &self.certificate) {
            (OutcomeKind::Minor, Certificate::Minor(c)) => Outcome::Minor(c.clone()),
            (OutcomeKind::IndependentSet, Certificate::IndependentSet(c)) => Outcome::IndependentSet(c.clone()),
            _ => return Err(validation_err!("outcome kind does not match certificate")),
        };
        Ok(DichotomyResult {
            outcome,
            d_target: self.d_target,
            bound_claimed: self.bound_claimed,
            bound_achieved: self.bound_achieved,
            preconditions_met: self.preconditions_met,
            trace: self.trace.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| input_err!("malformed report: {e}"))
    }

    /// Short plain-text rendering for terminals.
    pub fn human_summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input        {}", self.input_hash);
        let _ = writeln!(s, "t = {}, epsilon = {}, d = t*sqrt(ln t)/3 = {:.6}", self.config.t, self.config.epsilon, self.d_target);
        match &self.certificate {
            Certificate::Minor(c) => {
                let _ = writeln!(
                    s,
                    "outcome      minor with {} branch sets, {} edges, average degree {:.6}",
                    c.quotient_n, c.quotient_m, c.achieved_average_degree
                );
            }
            Certificate::IndependentSet(c) => {
                let _ = writeln!(s, "outcome      independent set of size {} ({:?})", c.len(), c.provenance);
            }
        }
        let _ = writeln!(s, "bound        claimed {:.6}, achieved ratio {:.6}", self.bound_claimed, self.bound_achieved);
        let _ = writeln!(s, "conditions   {}", if self.preconditions_met { "met" } else { "not met (desk scale)" });
        let _ = writeln!(s, "revalidated  {}", self.revalidated);
        for st in &self.trace {
            let _ = writeln!(s, "  [{}] {}", st.stage, st.detail);
        }
        s
    }
}
