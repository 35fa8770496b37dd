//! Command-line front end: graph ingestion and generation, single-target
//! queries, oracle baselines, benchmark runs, and a verification mode.
//!
//! Exit codes: 0 success, 1 I/O or graph-load failure, 2 usage error,
//! 3 verification or bound failure.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use targetrank::analysis::SamplingMode;
use targetrank::benchmark::{run_benchmark, BenchmarkConfig};
use targetrank::oracle::{
    dense_solve_all_pairs, global_pagerank, monte_carlo_from_source, power_iteration_to_target,
    WalkConfig, DENSE_NODE_CAP,
};
use targetrank::push::ppr_to_target_with_threshold;
use targetrank::{
    analysis, graph::generate_power_law_in_degree, graph::generate_uniform_random, ppr_to_target,
    Graph, PushState, Variant,
};

#[derive(Parser)]
#[command(
    name = "targetrank",
    version,
    about = "Personalized PageRank to a target node via reverse push"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the scores of all sources for one target
    Query(QueryArgs),
    /// Reference oracles: power iteration, Monte Carlo walks, global PageRank
    Baseline(BaselineArgs),
    /// Run the benchmark grid with theorem-bound comparisons
    Bench(BenchArgs),
    /// Generate a synthetic graph and write it as an edge list
    Gen(GenArgs),
    /// Check error bounds, step bounds, and invariants on a small graph
    Verify(VerifyArgs),
}

/// Where the graph comes from: an edge-list file or an inline generator.
#[derive(Args)]
struct GraphSource {
    /// Edge-list file with "u v" or "u v w" lines
    #[arg(long, value_name = "PATH", conflicts_with = "gen", required_unless_present = "gen")]
    graph: Option<PathBuf>,
    /// Generator spec: uniform,n=<N>,d=<D> or powerlaw,n=<N>,d=<D>,exponent=<B>
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
}

impl GraphSource {
    fn load(&self, seed: u64) -> Result<(Graph, String), CliError> {
        match (&self.graph, &self.gen) {
            (Some(path), None) => {
                let graph = Graph::load_edge_list_path(path)?;
                Ok((graph, path.display().to_string()))
            }
            (None, Some(spec)) => {
                let graph = generate_from_spec(spec, seed)?;
                Ok((graph, format!("gen:{spec},seed={seed}")))
            }
            _ => Err(CliError::Usage(
                "exactly one of --graph and --gen is required".into(),
            )),
        }
    }
}

fn generate_from_spec(spec: &str, seed: u64) -> Result<Graph, CliError> {
    let mut parts = spec.split(',');
    let kind = parts.next().unwrap_or_default();
    let (mut n, mut d, mut exponent) = (None, None, None);
    for part in parts {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--gen spec field {part:?} is not key=value"))
        })?;
        match key {
            "n" => n = Some(parse_flag::<usize>("--gen n", value)?),
            "d" => d = Some(parse_flag::<f64>("--gen d", value)?),
            "exponent" => exponent = Some(parse_flag::<f64>("--gen exponent", value)?),
            other => {
                return Err(CliError::Usage(format!(
                    "--gen spec has unknown field {other:?}"
                )))
            }
        }
    }
    let n = n.ok_or_else(|| CliError::Usage("--gen spec needs n=<nodes>".into()))?;
    let d = d.ok_or_else(|| CliError::Usage("--gen spec needs d=<average degree>".into()))?;
    match kind {
        "uniform" => Ok(generate_uniform_random(n, d, seed)?),
        "powerlaw" => {
            let exponent = exponent
                .ok_or_else(|| CliError::Usage("--gen powerlaw needs exponent=<beta>".into()))?;
            Ok(generate_power_law_in_degree(n, d, exponent, seed)?)
        }
        other => Err(CliError::Usage(format!(
            "--gen kind {other:?} is not uniform or powerlaw"
        ))),
    }
}

fn parse_flag<T: std::str::FromStr>(flag: &str, value: &str) -> Result<T, CliError> {
    value
        .parse::<T>()
        .map_err(|_| CliError::Usage(format!("{flag} has invalid value {value:?}")))
}

#[derive(Debug)]
enum CliError {
    /// Bad flags or parameters out of range: exit 2.
    Usage(String),
    /// I/O or graph-load failure: exit 1.
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<targetrank::Error> for CliError {
    fn from(err: targetrank::Error) -> Self {
        use targetrank::Error::*;
        match err {
            Io(_) | Parse { .. } | EmptyEdgeList => CliError::Io(err.to_string()),
            InvalidParameter(_) | InvalidWeight { .. } | TargetOutOfRange { .. }
            | GraphTooLarge { .. } => CliError::Usage(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

/// Writes to `--out` if given, else to stdout.
fn write_output(out: &Option<PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse::<Variant>().map_err(|e| e.to_string())
}

fn parse_sampling(s: &str) -> Result<SamplingMode, String> {
    s.parse::<SamplingMode>().map_err(|e| e.to_string())
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    input: GraphSource,
    /// Target node id
    #[arg(long)]
    target: usize,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    /// pq (priority queue) or set (FIFO work set)
    #[arg(long, value_parser = parse_variant, default_value = "pq")]
    variant: Variant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn cmd_query(args: &QueryArgs) -> Result<i32, CliError> {
    let (graph, _) = args.input.load(args.seed)?;
    let (scores, stats) =
        ppr_to_target(&graph, args.target, args.alpha, args.epsilon, args.variant)?;
    write_output(&args.out, &scores.to_tsv(args.epsilon, args.variant))?;
    eprintln!(
        "pops={} steps={} touched={} wall={:.6}s entries={}",
        stats.pops,
        stats.steps,
        stats.distinct_touched,
        stats.wall_time,
        scores.len()
    );
    Ok(0)
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    /// Fixed-point iteration toward a target
    Power,
    /// Seeded random walks from a source
    MonteCarlo,
    /// Global PageRank with uniform teleport
    Global,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(flatten)]
    input: GraphSource,
    #[arg(long, value_enum)]
    oracle: OracleKind,
    /// Target node (power oracle)
    #[arg(long)]
    target: Option<usize>,
    /// Source node (monte-carlo oracle)
    #[arg(long)]
    source: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Accuracy for the power oracle
    #[arg(long, default_value_t = 1e-4)]
    epsilon: f64,
    /// Convergence tolerance for the global oracle
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Walk count for the monte-carlo oracle
    #[arg(long, default_value_t = 100_000)]
    walks: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn cmd_baseline(args: &BaselineArgs) -> Result<i32, CliError> {
    let (graph, _) = args.input.load(args.seed)?;
    let mut body = Vec::new();
    match args.oracle {
        OracleKind::Power => {
            let target = args
                .target
                .ok_or_else(|| CliError::Usage("power oracle requires --target".into()))?;
            let scores = power_iteration_to_target(&graph, target, args.alpha, args.epsilon)?;
            scores.write_tsv("power", &mut body)?;
        }
        OracleKind::MonteCarlo => {
            let source = args
                .source
                .ok_or_else(|| CliError::Usage("monte-carlo oracle requires --source".into()))?;
            let estimate = monte_carlo_from_source(
                &graph,
                source,
                args.alpha,
                WalkConfig::new(args.walks, args.seed),
            )?;
            estimate.write_tsv(&mut body)?;
        }
        OracleKind::Global => {
            let scores = global_pagerank(&graph, args.alpha, args.tolerance)?;
            scores.write_tsv("global", &mut body)?;
        }
    }
    write_output(&args.out, std::str::from_utf8(&body).expect("TSV is UTF-8"))?;
    Ok(0)
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: GraphSource,
    /// Comma-separated teleport probabilities
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    alpha: Vec<f64>,
    /// Comma-separated additive error tolerances
    #[arg(long, value_delimiter = ',', default_value = "0.0001")]
    epsilon: Vec<f64>,
    /// Targets per (alpha, epsilon) setting
    #[arg(long, default_value_t = 20)]
    targets: usize,
    /// uniform or pagerank
    #[arg(long, value_parser = parse_sampling, default_value = "uniform")]
    sampling: SamplingMode,
    #[arg(long, value_parser = parse_variant, default_value = "pq")]
    variant: Variant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads per setting (1 = sequential, 0 = all cores)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let (graph, descriptor) = args.input.load(args.seed)?;
    let config = BenchmarkConfig {
        alphas: args.alpha.clone(),
        epsilons: args.epsilon.clone(),
        targets_per_setting: args.targets,
        sampling: args.sampling,
        variant: args.variant,
        seed: args.seed,
        graph_descriptor: descriptor,
        jobs: args.jobs,
    };
    let report = run_benchmark(&graph, &config)?;
    write_output(&args.out, &report.to_text())?;
    if report.failed {
        eprintln!("error bound violated; see report failures");
        Ok(3)
    } else {
        Ok(0)
    }
}

#[derive(Args)]
struct GenArgs {
    /// Generator spec: uniform,n=<N>,d=<D> or powerlaw,n=<N>,d=<D>,exponent=<B>
    #[arg(long, value_name = "SPEC")]
    gen: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn cmd_gen(args: &GenArgs) -> Result<i32, CliError> {
    let graph = generate_from_spec(&args.gen, args.seed)?;
    let mut body = String::new();
    body.push_str(&format!(
        "# gen:{spec} seed={seed} n={n} m={m}\n",
        spec = args.gen,
        seed = args.seed,
        n = graph.n(),
        m = graph.m()
    ));
    for u in 0..graph.n() {
        for &(v, _) in graph.out_edges(u) {
            if graph.is_real_node(v) {
                body.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    write_output(&args.out, &body)?;
    eprintln!("generated n={} m={}", graph.n(), graph.m());
    Ok(0)
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphSource,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Test hook: stop at priority epsilon instead of alpha * epsilon,
    /// which is expected to break the error bound
    #[arg(long, hide = true)]
    corrupt_threshold: bool,
}

struct CheckTable {
    rows: Vec<(String, bool, String)>,
}

impl CheckTable {
    fn new() -> Self {
        CheckTable { rows: Vec::new() }
    }

    fn add(&mut self, name: &str, pass: bool, detail: String) {
        self.rows.push((name.to_string(), pass, detail));
    }

    fn print_and_passes(&self) -> bool {
        let mut all = true;
        for (name, pass, detail) in &self.rows {
            println!(
                "check {name}: {} ({detail})",
                if *pass { "PASS" } else { "FAIL" }
            );
            all &= pass;
        }
        all
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let (graph, descriptor) = args.input.load(args.seed)?;
    if graph.n() > DENSE_NODE_CAP {
        return Err(CliError::Usage(format!(
            "verify needs n <= {DENSE_NODE_CAP}, graph has {}",
            graph.n()
        )));
    }
    let (alpha, epsilon) = (args.alpha, args.epsilon);
    let threshold = if args.corrupt_threshold {
        epsilon
    } else {
        alpha * epsilon
    };
    println!(
        "verify: graph={descriptor} n={} m={} alpha={alpha} epsilon={epsilon} threshold={threshold}",
        graph.n(),
        graph.m()
    );

    let dense = dense_solve_all_pairs(&graph, alpha)?;
    let n = graph.n();
    let log2_n = (n as f64).log2();
    let bound_slack = 1e-10;

    let mut max_err = [0.0f64; 2]; // per variant
    let mut total_steps = [0u64; 2];
    let mut max_work_ratio = 0.0f64;
    let mut work_bound_ok = true;
    let mut max_overshoot = f64::MIN;
    let mut max_residual = 0.0f64;
    let mut max_oracle_gap = 0.0f64;
    let audit_stepwise = n <= 60;

    for target in 0..n {
        let exact = dense.column(target);
        for (vi, variant) in [Variant::PriorityQueue, Variant::WorkSet].into_iter().enumerate() {
            let (scores, stats) =
                ppr_to_target_with_threshold(&graph, target, alpha, threshold, variant)?;
            let err = analysis::max_additive_error(&scores, &exact)?;
            max_err[vi] = max_err[vi].max(err);
            total_steps[vi] += stats.steps;
            if variant == Variant::PriorityQueue {
                // parameterized work bound: steps plus heap-pop cost
                let d_v = analysis::compute_d_v(&graph, &exact, alpha * epsilon)?.d_v;
                let allowance = analysis::theorem3_allowance(d_v, alpha, epsilon)?;
                let work = stats.steps as f64 + stats.pops as f64 * log2_n;
                if work > allowance + bound_slack {
                    work_bound_ok = false;
                }
                if allowance > 0.0 {
                    max_work_ratio = max_work_ratio.max(work / allowance);
                }
                // estimates stay lower bounds
                for u in 0..n {
                    max_overshoot = max_overshoot.max(scores.get(u) - exact.get(u));
                }
            }
        }

        // conservation audit on the live state
        let mut state = PushState::new(&graph, target, alpha)?;
        while let Some((node, pri)) = state.peek_max() {
            if pri <= threshold {
                break;
            }
            state.propagate(&graph, node);
            if audit_stepwise {
                max_residual = max_residual.max(state.conservation_residual(&graph));
            }
        }
        max_residual = max_residual.max(state.conservation_residual(&graph));

        // independent oracle routes agree
        let pi_eps = 1e-8;
        let power = power_iteration_to_target(&graph, target, alpha, pi_eps)?;
        for u in 0..=n {
            max_oracle_gap = max_oracle_gap.max((power.get(u) - exact.get(u)).abs());
        }
    }

    let mut table = CheckTable::new();
    let err_bound = (1.0 - alpha) * epsilon + bound_slack;
    table.add(
        "theorem-1-error-bound-pq",
        max_err[0] <= err_bound,
        format!("max error/epsilon = {:.4}", max_err[0] / epsilon),
    );
    table.add(
        "theorem-1-error-bound-set",
        max_err[1] <= err_bound,
        format!("max error/epsilon = {:.4}", max_err[1] / epsilon),
    );
    let allowance = analysis::theorem2_allowance(&graph, alpha, epsilon)?;
    let mean_pq = total_steps[0] as f64 / n as f64;
    let mean_set = total_steps[1] as f64 / n as f64;
    table.add(
        "theorem-2-mean-steps-pq",
        mean_pq <= allowance.priority_queue,
        format!("mean steps = {mean_pq:.1}, allowance = {:.1}", allowance.priority_queue),
    );
    table.add(
        "theorem-2-mean-steps-set",
        mean_set <= allowance.work_set,
        format!("mean steps = {mean_set:.1}, allowance = {:.1}", allowance.work_set),
    );
    table.add(
        "theorem-3-work-bound",
        work_bound_ok,
        format!("max work/allowance = {max_work_ratio:.4}"),
    );
    table.add(
        "conservation-invariant",
        max_residual < 1e-9,
        format!("max residual = {max_residual:.3e}"),
    );
    table.add(
        "lower-bound",
        max_overshoot <= 1e-9,
        format!("max overshoot = {max_overshoot:.3e}"),
    );
    table.add(
        "oracle-agreement",
        max_oracle_gap <= 2.0 * 1e-8,
        format!("max |power - dense| = {max_oracle_gap:.3e}"),
    );
    let mut max_row_dev = 0.0f64;
    for u in 0..=n {
        let sum: f64 = dense.row(u).iter().sum();
        max_row_dev = max_row_dev.max((sum - 1.0).abs());
    }
    table.add(
        "normalization",
        max_row_dev <= 1e-9,
        format!("max row-sum deviation = {max_row_dev:.3e}"),
    );

    let all_pass = table.print_and_passes();
    println!("verify-result: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok(if all_pass { 0 } else { 3 })
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Query(args) => cmd_query(args),
        Command::Baseline(args) => cmd_baseline(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.code());
        }
    }
}
