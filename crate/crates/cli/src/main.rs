//! `pqcluster` command-line driver.
//!
//! Exit codes: 0 solved or verified, 1 proven none (or refuted solution),
//! 2 budget exhausted, 64 usage error, 65 data error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pqcluster::generate::{gen_hardness_gadget, gen_planted, random_regular, PlantedSpec};
use pqcluster::io::{parse_graph, serialize_graph, verify_solution, SolutionFile, Status, Verdict};
use pqcluster::oracles::{
    oracle_cluster, oracle_important_separators, oracle_partition, OracleBudget,
};
use pqcluster::satellite::ColoringStrategy;
use pqcluster::separators::enumerate_important_separators;
use pqcluster::solver_p::{cluster_fpt_p, partition_fpt_p};
use pqcluster::solver_q::{
    brute_cluster, cluster_fpt_q, partition_fpt_q, partition_with, ClusterOutcome,
    PartitionOutcome, QConfig, QMode,
};
use pqcluster::{Bounds, EdgeCut, Error, Measure, MultiGraph, VertexSet};

const EXIT_NONE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Edge sets visited by the brute-force cluster search before giving up.
const BRUTE_LIMIT: u64 = 50_000_000;

#[derive(Parser)]
#[command(
    name = "pqcluster",
    version,
    about = "Partition graphs into clusters with bounded measure and cut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a cluster containing one vertex.
    Cluster {
        #[command(flatten)]
        problem: ProblemArgs,
        /// 1-based query vertex.
        #[arg(long)]
        vertex: usize,
    },
    /// Partition all vertices into clusters.
    Partition {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Check a solution file against a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// List important s-t separators of size at most k.
    ImportantSeps(SepArgs),
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Exhaustive reference computations for small graphs.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct GraphBounds {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = parse_measure)]
    mu: Measure,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct ProblemArgs {
    #[command(flatten)]
    base: GraphBounds,
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    /// Selection strategy for the cut-parameterized algorithm.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized trial budget per vertex.
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads for randomized trials.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct SepArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Brute,
    Fptq,
    Fptp,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rand,
    Derand,
    DerandGrouped,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with a planted partition; the graph goes to stdout.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        clusters: usize,
        #[arg(long, default_value_t = 0)]
        intra_nonedges: usize,
        #[arg(long, default_value_t = 0)]
        inter_edges: usize,
        #[arg(long, value_parser = parse_measure, default_value = "size")]
        mu: Measure,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the planted partition as a solution file.
        #[arg(long)]
        solution_out: Option<PathBuf>,
    },
    /// Apex gadget over a regular base graph (read from --base or sampled).
    Gadget {
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, required_unless_present = "base")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "base")]
        d: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Cluster {
        #[command(flatten)]
        base: GraphBounds,
        #[arg(long)]
        vertex: usize,
    },
    Partition {
        #[command(flatten)]
        base: GraphBounds,
    },
    ImportantSeps(SepArgs),
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse::<Measure>().map_err(|e| e.to_string())
}

/// Failure that ends the process with a specific exit code.
struct Exit {
    code: u8,
    msg: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded(_) | Error::OracleBudget(_) => EXIT_BUDGET,
            _ => EXIT_DATA,
        };
        Exit {
            code,
            msg: e.to_string(),
        }
    }
}

fn data_error(msg: impl Into<String>) -> Exit {
    Exit {
        code: EXIT_DATA,
        msg: msg.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Exit { code, msg }) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<u8, Exit> {
    match cmd {
        Command::Cluster { problem, vertex } => cluster(problem, vertex),
        Command::Partition { problem } => partition(problem),
        Command::Verify { graph, solution } => verify(&graph, &solution),
        Command::ImportantSeps(args) => separators(args, false),
        Command::Gen(g) => generate(g),
        Command::Oracle(o) => oracle(o),
    }
}

fn read_graph(path: &Path) -> Result<MultiGraph, Exit> {
    let text = fs::read_to_string(path)
        .map_err(|e| data_error(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn vertex_id(g: &MultiGraph, id: usize) -> Result<usize, Exit> {
    if id == 0 || id > g.n() {
        return Err(data_error(format!("vertex {id} outside 1..={}", g.n())));
    }
    Ok(id - 1)
}

fn bounds(args: &GraphBounds) -> Bounds {
    Bounds::new(args.mu, args.p, args.q)
}

fn emit(sol: &SolutionFile) -> u8 {
    print!("{}", sol.to_json());
    match sol.status {
        Status::Partition | Status::Cluster => 0,
        Status::None => EXIT_NONE,
        Status::BudgetExhausted => EXIT_BUDGET,
    }
}

fn resolve_algo(algo: Algo, g: &MultiGraph, b: Bounds) -> Algo {
    match algo {
        Algo::Auto if g.is_simple() && b.p <= b.q => Algo::Fptp,
        Algo::Auto => Algo::Fptq,
        other => other,
    }
}

fn q_config(args: &ProblemArgs) -> QConfig {
    QConfig {
        mode: match args.mode {
            None => QMode::Auto,
            Some(Mode::Rand) => QMode::Randomized,
            Some(Mode::Derand) => QMode::DerandSimple,
            Some(Mode::DerandGrouped) => QMode::DerandGrouped,
        },
        seed: args.seed,
        trials: args.trials,
        coloring: ColoringStrategy::Deterministic,
        threads: args.threads,
    }
}

fn algo_name(algo: Algo, cfg: &QConfig, q: usize) -> String {
    match algo {
        Algo::Brute => "brute".into(),
        Algo::Fptp => "fptp".into(),
        Algo::Fptq => match cfg.mode.resolve(q) {
            QMode::Randomized => "fptq-rand".into(),
            QMode::DerandSimple => "fptq-derand".into(),
            _ => "fptq-derand-grouped".into(),
        },
        Algo::Auto => unreachable!("resolved before naming"),
    }
}

fn cluster(args: ProblemArgs, vertex: usize) -> Result<u8, Exit> {
    let g = read_graph(&args.base.graph)?;
    let v = vertex_id(&g, vertex)?;
    let b = bounds(&args.base);
    let algo = resolve_algo(args.algo, &g, b);
    let cfg = q_config(&args);
    let (outcome, trials) = match algo {
        Algo::Brute => (found_or_none(brute_cluster(&g, b, v, BRUTE_LIMIT)?), 0),
        Algo::Fptp => (
            found_or_none(cluster_fpt_p(&g, b, v, ColoringStrategy::Deterministic)?),
            0,
        ),
        Algo::Fptq => {
            let run = cluster_fpt_q(&g, b, v, &cfg)?;
            (run.outcome, run.trials)
        }
        Algo::Auto => unreachable!("resolved above"),
    };
    let status = match outcome {
        ClusterOutcome::Found(_) => Status::Cluster,
        ClusterOutcome::NotFound => Status::None,
        ClusterOutcome::Exhausted => Status::BudgetExhausted,
    };
    let mut sol = SolutionFile::new(b, status, &algo_name(algo, &cfg, b.q));
    if let ClusterOutcome::Found(c) = &outcome {
        sol = sol.with_clusters(&g, std::slice::from_ref(c))?;
    }
    sol.vertex = Some(vertex);
    sol.trials_used = trials;
    if algo == Algo::Fptq && cfg.mode.resolve(b.q) == QMode::Randomized {
        sol.seed = Some(cfg.seed);
    }
    Ok(emit(&sol))
}

fn found_or_none(c: Option<VertexSet>) -> ClusterOutcome {
    c.map_or(ClusterOutcome::NotFound, ClusterOutcome::Found)
}

fn partition(args: ProblemArgs) -> Result<u8, Exit> {
    let g = read_graph(&args.base.graph)?;
    let b = bounds(&args.base);
    let algo = resolve_algo(args.algo, &g, b);
    let cfg = q_config(&args);
    let run = match algo {
        Algo::Brute => partition_with(&g, b, |v| brute_cluster(&g, b, v, BRUTE_LIMIT))?,
        Algo::Fptp => partition_fpt_p(&g, b, ColoringStrategy::Deterministic)?,
        Algo::Fptq => partition_fpt_q(&g, b, &cfg)?,
        Algo::Auto => unreachable!("resolved above"),
    };
    let status = match &run.outcome {
        PartitionOutcome::Found(_) => Status::Partition,
        PartitionOutcome::NotFound { .. } => Status::None,
        PartitionOutcome::Exhausted { .. } => Status::BudgetExhausted,
    };
    let mut sol = SolutionFile::new(b, status, &algo_name(algo, &cfg, b.q));
    if let PartitionOutcome::Found(p) = &run.outcome {
        sol = sol.with_clusters(&g, &p.clusters)?;
    }
    if let PartitionOutcome::NotFound { vertex } | PartitionOutcome::Exhausted { vertex } =
        run.outcome
    {
        sol.vertex = Some(vertex + 1);
    }
    sol.trials_used = run.trials;
    if algo == Algo::Fptq && cfg.mode.resolve(b.q) == QMode::Randomized {
        sol.seed = Some(cfg.seed);
    }
    Ok(emit(&sol))
}

fn verify(graph: &Path, solution: &Path) -> Result<u8, Exit> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(solution)
        .map_err(|e| data_error(format!("cannot read {}: {e}", solution.display())))?;
    let sol = SolutionFile::from_json(&text)?;
    match verify_solution(&g, &sol)? {
        Verdict::Valid => {
            println!("valid");
            Ok(0)
        }
        Verdict::NothingToCheck => {
            println!("no certificate to check (status {:?})", sol.status);
            Ok(0)
        }
        Verdict::Invalid(reason) => {
            println!("invalid: {reason}");
            Ok(EXIT_NONE)
        }
    }
}

/// Cut edges as `[u, v, multiplicity]` and the source side, 1-based.
fn separator_json(cut: &EdgeCut, side: &VertexSet) -> serde_json::Value {
    let edges: Vec<[usize; 3]> = cut
        .edges
        .iter()
        .map(|&(u, v, c)| [u + 1, v + 1, c as usize])
        .collect();
    let side: Vec<usize> = side.iter().map(|v| v + 1).collect();
    serde_json::json!({ "cut": edges, "source_side": side })
}

fn separators(args: SepArgs, use_oracle: bool) -> Result<u8, Exit> {
    let g = read_graph(&args.graph)?;
    let s = vertex_id(&g, args.s)?;
    let t = vertex_id(&g, args.t)?;
    let out: Vec<serde_json::Value> = if use_oracle {
        oracle_important_separators(&g, s, t, args.k, OracleBudget::default())?
            .iter()
            .map(|x| separator_json(&x.cut, &x.source_side))
            .collect()
    } else {
        enumerate_important_separators(&g, s, t, args.k)?
            .iter()
            .map(|x| separator_json(&x.cut, &x.source_side))
            .collect()
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("separators serialize")
    );
    Ok(0)
}

fn generate(cmd: GenCommand) -> Result<u8, Exit> {
    match cmd {
        GenCommand::Planted {
            n,
            clusters,
            intra_nonedges,
            inter_edges,
            mu,
            seed,
            solution_out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = PlantedSpec {
                n,
                clusters,
                intra_nonedges,
                inter_edges,
                measure: mu,
            };
            let planted = gen_planted(spec, &mut rng)?;
            print!("{}", serialize_graph(&planted.graph));
            if let Some(path) = solution_out {
                let sol = SolutionFile::new(planted.bounds, Status::Partition, "planted")
                    .with_clusters(&planted.graph, &planted.solution.clusters)?;
                fs::write(&path, sol.to_json())
                    .map_err(|e| data_error(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(0)
        }
        GenCommand::Gadget {
            base,
            n,
            d,
            k,
            seed,
        } => {
            let base = match base {
                Some(path) => read_graph(&path)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    random_regular(n.expect("required"), d.expect("required"), &mut rng)?
                }
            };
            let gadget = gen_hardness_gadget(&base, k)?;
            let s = gadget.spec;
            let text = serialize_graph(&gadget.graph);
            let (tag, body) = text.split_once('\n').expect("format line");
            println!("{tag}");
            println!(
                "c apex {} k {} threshold {}",
                s.apex + 1,
                s.k,
                s.threshold()
            );
            print!("{body}");
            Ok(0)
        }
    }
}

fn oracle(cmd: OracleCommand) -> Result<u8, Exit> {
    let budget = OracleBudget::default();
    match cmd {
        OracleCommand::Cluster { base, vertex } => {
            let g = read_graph(&base.graph)?;
            let v = vertex_id(&g, vertex)?;
            let b = bounds(&base);
            let found = oracle_cluster(&g, b, v, budget)?;
            let status = if found.is_some() {
                Status::Cluster
            } else {
                Status::None
            };
            let mut sol = SolutionFile::new(b, status, "oracle");
            if let Some(c) = found {
                sol = sol.with_clusters(&g, &[c])?;
            }
            sol.vertex = Some(vertex);
            Ok(emit(&sol))
        }
        OracleCommand::Partition { base } => {
            let g = read_graph(&base.graph)?;
            let b = bounds(&base);
            let mut sol = SolutionFile::new(b, Status::None, "oracle");
            if let Some(p) = oracle_partition(&g, b, budget)? {
                sol.status = Status::Partition;
                sol = sol.with_clusters(&g, &p.clusters)?;
            }
            Ok(emit(&sol))
        }
        OracleCommand::ImportantSeps(args) => separators(args, true),
    }
}
