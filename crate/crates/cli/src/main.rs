mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Dense minors or large independent sets in triangle-free graphs.
///
/// Results go to stdout as JSON unless `--human` is given. Exit status is 0
/// on success, 1 when an input or certificate fails validation, 2 on a
/// usage error.
#[derive(Parser, Debug)]
#[command(name = "trifree", version)]
struct Cli {
    /// Print a plain-text summary instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and print it as an edge list.
    Gen(GenArgs),
    /// Build the short-path power graph G^k_{<=3}.
    Power(PowerArgs),
    /// Search for a minor of average degree at least d.
    Minor(MinorArgs),
    /// Compute a verified independent set.
    Indep(IndepArgs),
    /// Run the full dichotomy and print its report.
    Dichotomy(DichotomyArgs),
    /// Run a brute-force reference check on a small instance.
    Oracle(OracleArgs),
    /// Execute an experiment plan and write CSV and JSON results.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Seed {
    /// Random seed; falls back to $TRIFREE_SEED, then 0.
    #[arg(long, env = "TRIFREE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct Input {
    /// Edge-list file, or `-` for stdin.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Cycle,
    CompleteBipartite,
    Petersen,
    BipartiteRandom,
    GnmTriangleDeleted,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Vertex count (cycle, gnm_triangle_deleted).
    #[arg(long)]
    n: Option<usize>,
    /// Edge budget for gnm_triangle_deleted; defaults to n^{3/2}/sqrt(A).
    #[arg(long)]
    m: Option<usize>,
    /// Constant A in the default edge budget.
    #[arg(long, default_value_t = trifree_core::generators::DEFAULT_ERDOS_CONSTANT)]
    erdos_constant: f64,
    /// Size of the first part (bipartite families).
    #[arg(long)]
    a: Option<usize>,
    /// Size of the second part (bipartite families).
    #[arg(long)]
    b: Option<usize>,
    /// Edge probability for bipartite_random.
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    seed: Seed,
}

#[derive(Args, Debug)]
struct PowerArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    k: usize,
    /// File of whitespace-separated vertex ids that may not be path interiors.
    #[arg(long)]
    blocked: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Overrides {
    /// Replace a named constant, e.g. `c_ball=0.5`. Repeatable.
    #[arg(long = "override", value_name = "KEY=VAL", value_parser = parse_override)]
    overrides: Vec<(String, f64)>,
}

#[derive(Args, Debug)]
struct MinorArgs {
    #[command(flatten)]
    input: Input,
    /// Target average degree.
    #[arg(long)]
    d: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Path multiplicity; k = 1 runs the ball-size test first.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[command(flatten)]
    seed: Seed,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Turan,
    Recursive,
}

#[derive(Args, Debug)]
struct IndepArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Method::Recursive)]
    method: Method,
    /// Degree scale for the recursive method.
    #[arg(long, default_value_t = 10.0)]
    d: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Neighbourhood ratio bound; defaults to c_ball * d^{1-epsilon}.
    #[arg(long)]
    tau: Option<f64>,
    /// Minor-search rounds used when the recursion falls back.
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[command(flatten)]
    seed: Seed,
}

#[derive(Args, Debug)]
struct DichotomyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[command(flatten)]
    seed: Seed,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Alpha,
    Paths,
    Power,
    Minor,
    Binomial,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, value_enum)]
    check: Check,
    /// Edge-list file (all checks except binomial).
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Largest graph the oracle will accept.
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    /// Endpoints for `paths`.
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    /// Multiplicity for `power`.
    #[arg(long)]
    k: Option<usize>,
    /// Clique size for `minor`.
    #[arg(long)]
    t: Option<usize>,
    /// Success probability, trial count and threshold for `binomial`.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// ExperimentPlan JSON file.
    #[arg(long)]
    plan: PathBuf,
    /// Overrides the plan's output path.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (key, val) = s.split_once('=').ok_or_else(|| format!("expected KEY=VAL, got {s:?}"))?;
    let val: f64 = val.trim().parse().map_err(|_| format!("not a number: {val:?}"))?;
    Ok((key.trim().to_string(), val))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Power(args) => commands::power(args),
        Command::Minor(args) => commands::minor(args, cli.human),
        Command::Indep(args) => commands::indep(args, cli.human),
        Command::Dichotomy(args) => commands::dichotomy(args, cli.human),
        Command::Oracle(args) => commands::oracle(args, cli.human),
        Command::Bench(args) => bench::run(args, cli.human),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
