use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rcs_core::bench::{
    generate_batch, random_complete_01, random_digraph, random_graph, run_bench, to_csv, Algorithm, Family,
    GenSpec, RandomSpec,
};
use rcs_core::io::{instance_from_json, instance_to_json, ReportJson};
use rcs_core::reductions::{self, binary_scs_driver};
use rcs_core::seed::derive_seed;
use rcs_core::superstring::{AtspSubroutine, OrderStrategy};
use rcs_core::supersequence::{estimate_expected_score, partition_pq, MasSubroutine};
use rcs_core::{score_arrangement, solve_exact, Error, GraphFile, Instance, Kind, SearchConfig};

const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "rcs", version, about = "Restricted common superstring / supersequence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file and list its violations.
    Validate {
        file: PathBuf,
        /// Drop repeated patterns before validating.
        #[arg(long)]
        dedup: bool,
    },
    /// Solve an instance and print the report with its arrangement.
    Solve(SolveArgs),
    /// Score an arrangement of the instance's text.
    Verify { file: PathBuf, arrangement: String },
    /// Print a generated instance.
    Gen(GenArgs),
    /// Shortest common superstring of binary patterns (one per line).
    Scs {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        binary_search: bool,
    },
    /// Solve a generated batch with several algorithms and write a CSV table.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Alg {
    Exact,
    GreedyConcat,
    Atsp2,
    Rcsseq2,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Input,
    Longest,
    Shortest,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sub {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mas {
    Exact,
    OrderReverse,
    Local,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    alg: Alg,
    #[arg(long, value_enum, default_value = "input")]
    order: Order,
    #[arg(long, value_enum, default_value = "exact")]
    sub: Sub,
    #[arg(long, value_enum, default_value = "exact")]
    mas: Mas,
    /// Improvement passes for `--mas local` (default: twice the number of
    /// symbols occurring once).
    #[arg(long)]
    passes: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte-Carlo samples for `--alg random`; above 1 adds mean and standard error.
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long)]
    dedup: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Tight,
    Clique,
    Atsp,
    Mas,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Substring,
    Subsequence,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Substring => Kind::Substring,
            KindArg::Subsequence => Kind::Subsequence,
        }
    }
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 3)]
    sigma: usize,
    /// Text length.
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Number of patterns.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Longest pattern length.
    #[arg(long, default_value_t = 3)]
    ell: usize,
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    #[arg(long, value_enum, default_value = "substring")]
    kind: KindArg,
    /// Every symbol occurs once in t (`--m` is ignored).
    #[arg(long)]
    set: bool,
}

impl RandomArgs {
    fn spec(&self) -> RandomSpec {
        RandomSpec {
            sigma: self.sigma,
            m: self.m,
            n: self.n,
            min_len: self.min_len,
            max_len: self.ell,
            kind: self.kind.into(),
            set_text: self.set,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Graph JSON for the reduction families.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    random: RandomArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Comma-separated names, e.g. `exact,greedy-concat-longest,atsp2-greedy`.
    #[arg(long, value_delimiter = ',', required = true)]
    algs: Vec<String>,
    #[command(flatten)]
    random: RandomArgs,
    /// Vertices of the random graphs behind the reduction families.
    #[arg(long, default_value_t = 4)]
    vertices: usize,
    /// Edge probability of those graphs.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Skip the exact reference solve (no ratios).
    #[arg(long)]
    no_exact: bool,
    #[arg(long)]
    timing: bool,
}

/// Error paired with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_INVALID, err: e.into() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Validate { file, dedup } => cmd_validate(&file, dedup),
        Command::Solve(args) => cmd_solve(&args),
        Command::Verify { file, arrangement } => cmd_verify(&file, &arrangement),
        Command::Gen(args) => cmd_gen(&args),
        Command::Scs { input, binary_search } => cmd_scs(&input, binary_search),
        Command::Bench(args) => cmd_bench(&args),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn search_config() -> anyhow::Result<SearchConfig> {
    match std::env::var("RCS_NODE_BUDGET") {
        Ok(v) => {
            let budget = v.trim().parse().with_context(|| format!("RCS_NODE_BUDGET={v:?} is not a count"))?;
            Ok(SearchConfig::default().with_node_budget(budget))
        }
        Err(_) => Ok(SearchConfig::default()),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path, dedup: bool) -> anyhow::Result<Instance> {
    let mut inst = instance_from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if dedup {
        inst.dedup_patterns();
    }
    Ok(inst)
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("value serializes"));
}

/// Prints the violation list and returns the invalid-input exit code, or
/// `None` if the instance is valid.
fn report_violations(inst: &Instance) -> Option<u8> {
    let v = inst.validate();
    if v.is_empty() {
        return None;
    }
    print_json(&json!({ "valid": false, "violations": v }));
    Some(EXIT_INVALID)
}

fn cmd_validate(file: &Path, dedup: bool) -> CmdResult {
    let inst = load_instance(file, dedup)?;
    if let Some(code) = report_violations(&inst) {
        return Ok(code);
    }
    print_json(&json!({ "valid": true, "violations": [] }));
    Ok(0)
}

fn cmd_solve(args: &SolveArgs) -> CmdResult {
    let inst = load_instance(&args.file, args.dedup)?;
    if let Some(code) = report_violations(&inst) {
        return Ok(code);
    }
    let config = search_config()?;
    let alg = match args.alg {
        Alg::Exact => {
            let (res, code) = match solve_exact(&inst, &config) {
                Ok(r) => (r, 0),
                Err(Error::BudgetExhausted(r)) => (*r, EXIT_BUDGET),
                Err(e) => return Err(e.into()),
            };
            let mut out = ReportJson::new(&inst, &res.report, args.timing);
            out.proven_optimal = Some(res.proven_optimal);
            out.nodes_expanded = Some(res.nodes_expanded);
            print_json(&out);
            if code == EXIT_BUDGET {
                eprintln!("node budget exhausted; printed the best arrangement found");
            }
            return Ok(code);
        }
        Alg::GreedyConcat => Algorithm::GreedyConcat(match args.order {
            Order::Input => OrderStrategy::InputOrder,
            Order::Longest => OrderStrategy::LongestFirst,
            Order::Shortest => OrderStrategy::ShortestFirst,
            Order::Random => OrderStrategy::Random(args.seed),
        }),
        Alg::Atsp2 => Algorithm::Atsp2(match args.sub {
            Sub::Exact => AtspSubroutine::ExactHeldKarp,
            Sub::Greedy => AtspSubroutine::GreedyEdge,
        }),
        Alg::Rcsseq2 => Algorithm::Rcsseq2(match args.mas {
            Mas::Exact => MasSubroutine::ExactBrute,
            Mas::OrderReverse => MasSubroutine::OrderVsReverse { seed: args.seed },
            Mas::Local => {
                let passes = args.passes.unwrap_or_else(|| 2 * partition_pq(&inst.text).p_prime.len());
                MasSubroutine::LocalSearch { seed: args.seed, passes }
            }
        }),
        Alg::Random => Algorithm::Random { seed: args.seed },
    };
    let report = alg.run(&inst, &config)?;
    let mut out = ReportJson::new(&inst, &report, args.timing);
    if matches!(args.alg, Alg::Random) && args.samples > 1 {
        let est = estimate_expected_score(&inst, args.samples, args.seed)?;
        out.mean = Some(est.mean);
        out.std_error = Some(est.std_error);
    }
    print_json(&out);
    Ok(0)
}

fn cmd_verify(file: &Path, arrangement: &str) -> CmdResult {
    let inst = load_instance(file, false)?;
    let arr = inst.arrangement_from_str(arrangement)?;
    let report = score_arrangement(&inst, &arr)?.with_algorithm("verify");
    print_json(&ReportJson::new(&inst, &report, false));
    Ok(0)
}

fn load_graph(path: Option<&Path>) -> anyhow::Result<GraphFile> {
    let Some(path) = path else { bail!("this family needs --graph <file.json>") };
    GraphFile::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    let graph = || load_graph(args.graph.as_deref());
    let family = match args.family {
        FamilyArg::Random => Family::Random(args.random.spec()),
        FamilyArg::Tight => Family::TightExample,
        FamilyArg::Clique => Family::CliqueReduction(graph()?.undirected()?),
        FamilyArg::Atsp => Family::AtspReduction(graph()?.complete_digraph()?),
        FamilyArg::Mas => Family::MasReduction(graph()?.digraph()?),
    };
    let inst = GenSpec { family, seed: args.seed }.generate()?;
    println!("{}", instance_to_json(&inst));
    Ok(0)
}

fn cmd_scs(input: &Path, binary_search: bool) -> CmdResult {
    let patterns = read(input)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.chars()
                .map(|c| match c {
                    '0' => Ok(0u8),
                    '1' => Ok(1u8),
                    _ => bail!("pattern {l:?} is not binary"),
                })
                .collect::<anyhow::Result<Vec<u8>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let out = match binary_scs_driver(&patterns, &search_config()?, binary_search) {
        Ok(o) => o,
        Err(e @ Error::BudgetExhausted(_)) => return Err(Failure { code: EXIT_BUDGET, err: e.into() }),
        Err(e) => return Err(e.into()),
    };
    let s: String = out.superstring.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
    print_json(&json!({ "superstring": s, "length": s.len(), "solver_calls": out.solver_calls }));
    Ok(0)
}

fn cmd_bench(args: &BenchArgs) -> CmdResult {
    let algorithms = args
        .algs
        .iter()
        .map(|a| Algorithm::parse(a.trim(), args.seed))
        .collect::<rcs_core::Result<Vec<_>>>()?;
    let instances = match args.family {
        FamilyArg::Random => generate_batch(&Family::Random(args.random.spec()), args.count, args.seed)?,
        FamilyArg::Tight => generate_batch(&Family::TightExample, args.count, args.seed)?,
        graph_family => (0..args.count)
            .map(|i| {
                let s = derive_seed(args.seed, i as u64);
                let (name, inst) = match graph_family {
                    FamilyArg::Clique => ("clique", reductions::clique_to_rcsstr(&random_graph(args.vertices, args.p, s)?)?),
                    FamilyArg::Atsp => ("atsp", reductions::atsp01_to_rcsstr2(&random_complete_01(args.vertices, args.p, s)?)?),
                    _ => ("mas", reductions::digraph_to_rcsseq2(&random_digraph(args.vertices, args.p, s)?)?),
                };
                Ok((format!("{name}-{i:04}"), name.to_string(), inst))
            })
            .collect::<rcs_core::Result<Vec<_>>>()?,
    };
    let outcome = run_bench(&instances, &algorithms, &search_config()?, !args.no_exact)?;
    std::fs::write(&args.out, to_csv(&outcome, args.timing))
        .with_context(|| format!("writing {}", args.out.display()))?;
    let flagged = outcome.rows.iter().filter(|r| !args.no_exact && r.exact_score.is_none()).count();
    if flagged > 0 {
        eprintln!("{flagged} rows have no exact reference (node budget exhausted)");
    }
    Ok(0)
}
