use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::CommandFactory;
use serde_json::{json, Value};
use trifree_core::generators::{erdos_edge_budget, generate, Family, GenSpec};
use trifree_core::indep::{recursive_independent_set, turan_greedy, RecursionConfig};
use trifree_core::io::{parse_edge_list, write_edge_list};
use trifree_core::minor::{dense_minor_via_balls, derive_params_with, search_dense_minor, MinorCertificate};
use trifree_core::oracles::{
    disjoint_short_paths_exact, exact_binomial_tail, has_clique_minor_exact, max_independent_set_exact,
    short_path_power_exact, OracleBudget,
};
use trifree_core::paths::short_path_power;
use trifree_core::pipeline::{DichotomyConfig, Report};
use trifree_core::{Constants, Graph, VertexSet};

use crate::{Check, Cli, DichotomyArgs, FamilyName, GenArgs, IndepArgs, Method, MinorArgs, OracleArgs, PowerArgs};

/// Reports a missing or inconsistent flag the way clap does, with exit code 2.
fn usage(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, msg).exit()
}

fn required<T>(value: Option<T>, flag: &str, context: &str) -> T {
    value.unwrap_or_else(|| usage(format!("{context} requires --{flag}")))
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(value: &Value, human: bool, summary: impl FnOnce() -> String) {
    if human {
        print!("{}", summary());
    } else {
        println!("{value}");
    }
}

fn constants_with(overrides: &[(String, f64)]) -> Result<Constants> {
    let mut c = Constants::default();
    for (key, val) in overrides {
        c.set(key, *val)?;
    }
    Ok(c)
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let ctx = "this family";
    let family = match args.family {
        FamilyName::Cycle => Family::Cycle { n: required(args.n, "n", ctx) },
        FamilyName::CompleteBipartite => {
            Family::CompleteBipartite { a: required(args.a, "a", ctx), b: required(args.b, "b", ctx) }
        }
        FamilyName::Petersen => Family::Petersen,
        FamilyName::BipartiteRandom => Family::BipartiteRandom {
            a: required(args.a, "a", ctx),
            b: required(args.b, "b", ctx),
            p: required(args.p, "p", ctx),
        },
        FamilyName::GnmTriangleDeleted => {
            let n = required(args.n, "n", ctx);
            let m = args.m.unwrap_or_else(|| erdos_edge_budget(n, args.erdos_constant));
            Family::GnmTriangleDeleted { n, m }
        }
    };
    let g = generate(&GenSpec::new(family, args.seed.seed))?;
    print!("{}", write_edge_list(&g));
    Ok(())
}

pub fn power(args: &PowerArgs) -> Result<()> {
    let g = read_graph(&args.input.input)?;
    let blocked = match &args.blocked {
        None => VertexSet::new(),
        Some(path) => read_text(path)?
            .split_whitespace()
            .map(|tok| tok.parse().with_context(|| format!("bad vertex id {tok:?} in {}", path.display())))
            .collect::<Result<VertexSet>>()?,
    };
    let power = short_path_power(&g, args.k, &blocked)?;
    print!("{}", write_edge_list(&power.graph));
    Ok(())
}

pub fn minor(args: &MinorArgs, human: bool) -> Result<()> {
    let g = read_graph(&args.input.input)?;
    let constants = constants_with(&args.overrides.overrides)?;
    let seed = args.seed.seed;
    let (certificate, witness): (Option<MinorCertificate>, Option<usize>) = if args.k == 1 {
        let out = dense_minor_via_balls(&g, args.d, args.epsilon, args.trials, seed, &constants)?;
        let witness = (!out.all_balls_large).then_some(out.witness);
        (out.certificate().cloned(), witness)
    } else {
        let params = derive_params_with(args.d, args.epsilon, args.k, &constants)?;
        (search_dense_minor(&g, &params, args.trials, seed)?.certificate, None)
    };
    if let Some(cert) = &certificate {
        cert.revalidate(&g).context("minor certificate failed revalidation")?;
    }
    let mut out = json!({
        "found": certificate.is_some(),
        "d": args.d,
        "achieved_average_degree": certificate.as_ref().map(|c| c.achieved_average_degree),
        "branches": certificate.as_ref().map(|c| c.model.branches.clone()),
    });
    if let Some(w) = witness {
        out["witness_vertex"] = json!(w);
    }
    emit(&out, human, || match (&certificate, witness) {
        (Some(c), _) => format!(
            "minor with {} branch sets and average degree {:.6} (target {})\n",
            c.quotient_n, c.achieved_average_degree, args.d
        ),
        (None, Some(w)) => format!("no minor found; vertex {w} has a small radius-3 ball\n"),
        (None, None) => format!("no minor of average degree {} found\n", args.d),
    });
    Ok(())
}

pub fn indep(args: &IndepArgs, human: bool) -> Result<()> {
    let g = read_graph(&args.input.input)?;
    let cert = match args.method {
        Method::Turan => turan_greedy(&g)?,
        Method::Recursive => {
            let config = RecursionConfig {
                tau: args.tau,
                minor_trials: args.trials,
                seed: args.seed.seed,
                ..RecursionConfig::new(args.d, args.epsilon)
            };
            recursive_independent_set(&g, &config)?
        }
    };
    cert.verify(&g).context("independent set failed verification")?;
    let out = json!({
        "size": cert.len(),
        "members": cert.members,
        "provenance": cert.provenance,
        "verified": true,
    });
    emit(&out, human, || format!("independent set of size {} ({:?}), verified\n", cert.len(), cert.provenance));
    Ok(())
}

pub fn dichotomy(args: &DichotomyArgs, human: bool) -> Result<()> {
    let g = read_graph(&args.input.input)?;
    let mut config = DichotomyConfig::new(args.t, args.epsilon).with_trials(args.trials).with_seed(args.seed.seed);
    for (key, val) in &args.overrides.overrides {
        config = config.with_override(key, *val);
    }
    let result = trifree_core::dichotomy(&g, &config)?;
    let report = Report::new(&g, &config, &result);
    if !report.revalidated {
        bail!("certificate did not revalidate against the input");
    }
    if human {
        print!("{}", report.human_summary());
    } else {
        println!("{}", report.to_json());
    }
    Ok(())
}

pub fn oracle(args: &OracleArgs, human: bool) -> Result<()> {
    let budget = OracleBudget::with_max_vertices(args.max_vertices);
    let graph = || -> Result<Graph> { read_graph(&required(args.input.clone(), "input", "this check")) };
    let (out, summary) = match args.check {
        Check::Alpha => {
            let set = max_independent_set_exact(&graph()?, &budget)?;
            (json!({ "alpha": set.len(), "witness": set }), format!("alpha = {}\n", set.len()))
        }
        Check::Paths => {
            let (u, v) = (required(args.u, "u", "paths"), required(args.v, "v", "paths"));
            let count = disjoint_short_paths_exact(&graph()?, u, v, &budget)?;
            (json!({ "u": u, "v": v, "paths": count }), format!("{count} disjoint short paths between {u} and {v}\n"))
        }
        Check::Power => {
            let k = required(args.k, "k", "power");
            let edges = short_path_power_exact(&graph()?, k, &budget)?;
            let summary = format!("G^{k} has {} edges\n", edges.len());
            (json!({ "k": k, "edges": edges }), summary)
        }
        Check::Minor => {
            let t = required(args.t, "t", "minor");
            let found = has_clique_minor_exact(&graph()?, t, &budget)?;
            let summary = format!("K{t} minor: {}\n", if found.is_some() { "yes" } else { "no" });
            (json!({ "t": t, "found": found.is_some(), "branches": found.map(|m| m.branches) }), summary)
        }
        Check::Binomial => {
            let p = required(args.p, "p", "binomial");
            let m = required(args.m, "m", "binomial");
            let threshold = required(args.threshold, "threshold", "binomial");
            let tail = exact_binomial_tail(p, m, threshold)?;
            (
                json!({ "p": p, "m": m, "threshold": threshold, "tail": tail }),
                format!("P(Bin({m}, {p}) > {threshold}) = {tail:e}\n"),
            )
        }
    };
    emit(&out, human, || summary);
    Ok(())
}
