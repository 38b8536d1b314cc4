//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or precondition failure (including bad
//! flags and malformed input), 2 I/O failure, 3 internal invariant violation.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::decompose::{
    decompose, trace_to_jsonl, Claim, DecomposeError, DecomposeOptions, DecompositionResult, Strategy,
};
use crate::family::verify_family;
use crate::generators::{gen_named, gen_random_semiregular, Family, GeneratorSpec};
use crate::graph::{d_threshold, Graph};
use crate::io::{parse_family, parse_graph, write_family, write_graph};
use crate::matching::Matching;
use crate::oracle::{max_disjoint_pm, OracleError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pmfactor", version, about = "Edge-disjoint perfect matchings in semi-regular graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Find edge-disjoint perfect matchings.
    Decompose(DecomposeArgs),
    /// Check a matching family against a graph.
    Verify(VerifyArgs),
    /// Exact maximum family by exhaustive search (small graphs).
    Oracle(OracleArgs),
    /// Run random semi-regular graphs over a grid of orders and seeds.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// One of sharp-g1, sharp-g2, counterexample, random-semiregular,
    /// complete, cycle, petersen, complete-bipartite.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Base degree for random-semiregular (default: the threshold for n).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Graph file.
    graph: PathBuf,
    /// Number of matchings to find (default: ceil(n/4)).
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, default_value = "proof")]
    strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restart_budget: usize,
    /// Peel surplus matchings from Hamiltonian cycles.
    #[arg(long)]
    via_hamilton: bool,
    /// Skip one claim assertion; repeatable.
    #[arg(long = "disable-claim", value_name = "CLAIM")]
    disable_claims: Vec<Claim>,
    /// Family file to continue from.
    #[arg(long)]
    warm_start: Option<PathBuf>,
    /// Directory for stuck states whose augmentation failed.
    #[arg(long)]
    reproducer_dir: Option<PathBuf>,
    /// Family output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON-lines trace output file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    graph: PathBuf,
    family: PathBuf,
}

#[derive(Args, Debug)]
struct OracleArgs {
    graph: PathBuf,
    /// Maximum number of perfect matchings to enumerate.
    #[arg(long, default_value_t = 2_000_000)]
    cap: usize,
    /// Witness family output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Even order or inclusive range `a..b` of even orders.
    /// Repeatable.
    #[arg(long, value_parser = parse_orders)]
    n: Vec<Orders>,
    /// Seeds per order, `0..seeds`.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value = "proof")]
    strategy: Strategy,
    /// Base degree (default: the threshold for each n).
    #[arg(long)]
    k: Option<usize>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// CSV output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct Orders(Vec<usize>);

fn parse_orders(s: &str) -> Result<Orders, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad order {t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    let orders: Vec<usize> = (lo..=hi).filter(|n| n % 2 == 0).collect();
    if orders.is_empty() || lo % 2 == 1 {
        return Err(format!("orders must be even: {s}"));
    }
    Ok(Orders(orders))
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DOMAIN, message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

type CmdResult = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write_to(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

fn load_family(path: &Path, n: usize) -> Result<Vec<Matching>, Failure> {
    parse_family(&read(path)?, n).map_err(|e| Failure::domain(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_DOMAIN,
            };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Decompose(a) => cmd_decompose(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure { code: EXIT_IO, message: format!("stdout: {e}") })
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CmdResult {
    let family = Family::from_name(&a.family).ok_or_else(|| {
        let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
        Failure::domain(format!("unknown family {:?}; expected one of {}", a.family, names.join(", ")))
    })?;
    let k = match a.k {
        Some(k) => k,
        None => d_threshold(a.n).unwrap_or(0),
    };
    let g = gen_named(&GeneratorSpec { family, n: a.n, k, seed: a.seed }).map_err(|e| Failure::domain(e.to_string()))?;
    let text = write_graph(&g);
    match &a.out {
        Some(p) => write_to(p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn save_run(a: &DecomposeArgs, r: &DecompositionResult) -> Result<(), Failure> {
    if let Some(p) = &a.out {
        write_to(p, &write_family(&r.family.matchings))?;
    }
    if let Some(p) = &a.trace {
        write_to(p, &trace_to_jsonl(&r.trace, true))?;
    }
    Ok(())
}

fn cmd_decompose(a: DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph)?;
    let n = g.order();
    let target = a.target.unwrap_or(n.div_ceil(4));
    let mut opts = DecomposeOptions::new(target, a.strategy).seed(a.seed);
    opts.restart_budget = a.restart_budget;
    opts.via_hamilton = a.via_hamilton;
    opts.reproducer_dir = a.reproducer_dir.clone();
    for &c in &a.disable_claims {
        opts.claims.disable(c);
    }
    if let Some(p) = &a.warm_start {
        opts.warm_start = load_family(p, n)?;
    }
    match decompose(&g, &opts) {
        Ok(r) => {
            save_run(&a, &r)?;
            emit(out, &format!("achieved={} target={}\n", r.achieved, r.target))?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            if let Some(r) = e.partial() {
                save_run(&a, r)?;
                emit(out, &format!("achieved={} target={}\n", r.achieved, r.target))?;
            }
            let code = match &e {
                DecomposeError::BudgetExhausted(r) if r.claim_violations > 0 => EXIT_INTERNAL,
                _ => EXIT_DOMAIN,
            };
            let message = match &e {
                DecomposeError::TargetUnreachable { reason, .. } => reason.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(err, "error: {message}");
            Ok(code)
        }
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph)?;
    let family = load_family(&a.family, g.order())?;
    match verify_family(&g, &family) {
        Ok(()) => {
            emit(out, &format!("ok: {} disjoint perfect matchings\n", family.len()))?;
            Ok(EXIT_OK)
        }
        Err(v) => {
            emit(out, &format!("{v}\n"))?;
            Ok(EXIT_DOMAIN)
        }
    }
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> CmdResult {
    let g = load_graph(&a.graph)?;
    let packing = match max_disjoint_pm(&g, a.cap) {
        Ok(p) => p,
        Err(e @ (OracleError::CapExceeded { .. } | OracleError::OddOrder(_))) => return Err(Failure::domain(e.to_string())),
        Err(e) => return Err(Failure { code: EXIT_INTERNAL, message: e.to_string() }),
    };
    if let Some(p) = &a.out {
        write_to(p, &write_family(&packing.witness_family.matchings))?;
    }
    emit(out, &format!("pm_count={} max_disjoint={}\n", packing.pm_count, packing.max_disjoint))?;
    Ok(EXIT_OK)
}

/// One CSV row of `bench`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub degree: usize,
    pub target: usize,
    pub achieved: usize,
    pub elapsed_ms: u128,
    pub augment_calls: usize,
    pub case_histogram: [usize; 3],
}

pub const BENCH_HEADER: &str = "n,seed,D,target,achieved,elapsed_ms,augment_calls,case_s_histogram";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let [s0, s1, s2] = self.case_histogram;
        format!(
            "{},{},{},{},{},{},{},s0={s0};s1={s1};s2={s2}",
            self.n, self.seed, self.degree, self.target, self.achieved, self.elapsed_ms, self.augment_calls
        )
    }
}

/// Matchings guaranteed for a `{k, k+1}`-graph of order `n` with `k` at or
/// above the threshold.
pub fn default_target(n: usize, k: usize) -> usize {
    n.div_ceil(4).max((k + 1).div_ceil(2))
}

fn bench_row(n: usize, k: Option<usize>, seed: u64, strategy: Strategy) -> Result<BenchRow, String> {
    let degree = k.unwrap_or_else(|| d_threshold(n).expect("even order"));
    let g = gen_random_semiregular(n, degree, seed).map_err(|e| e.to_string())?;
    let target = default_target(n, degree);
    let opts = DecomposeOptions::new(target, strategy).seed(seed);
    let r = match decompose(&g, &opts) {
        Ok(r) => r,
        Err(e) => match e.partial() {
            Some(r) => r.clone(),
            None => return Err(format!("n={n} seed={seed}: {e}")),
        },
    };
    Ok(BenchRow {
        n,
        seed,
        degree,
        target,
        achieved: r.achieved,
        elapsed_ms: r.elapsed.as_millis(),
        augment_calls: r.augment_calls,
        case_histogram: r.case_histogram,
    })
}

/// Runs the grid on worker threads; rows come back ordered by `(n, seed)`.
pub fn bench_rows(
    orders: &[usize],
    seeds: u64,
    k: Option<usize>,
    strategy: Strategy,
    threads: usize,
) -> Result<Vec<BenchRow>, String> {
    let jobs: Vec<(usize, u64)> = orders.iter().flat_map(|&n| (0..seeds).map(move |s| (n, s))).collect();
    let threads = threads.clamp(1, jobs.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<Result<BenchRow, String>>> = vec![None; jobs.len()];
    let done: Vec<(usize, Result<BenchRow, String>)> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        let Some(&(n, seed)) = jobs.get(i) else { break };
                        mine.push((i, bench_row(n, k, seed, strategy)));
                    }
                    mine
                })
            })
            .collect();
        workers.into_iter().flat_map(|w| w.join().expect("bench worker panicked")).collect()
    });
    for (i, row) in done {
        slots[i] = Some(row);
    }
    slots.into_iter().map(|r| r.expect("every job ran")).collect()
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let orders: Vec<usize> = a.n.iter().flat_map(|o| o.0.iter().copied()).collect();
    if orders.is_empty() {
        return Err(Failure::domain("--n is required"));
    }
    if a.strategy == Strategy::Proof {
        if let Some(small) = orders.iter().find(|&&n| n < 34) {
            return Err(Failure::domain(format!("strategy proof needs n >= 34, got {small}")));
        }
    }
    let threads = a
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1));
    let rows = bench_rows(&orders, a.seeds, a.k, a.strategy, threads).map_err(Failure::domain)?;
    let mut csv = String::new();
    csv.push_str(BENCH_HEADER);
    csv.push('\n');
    for r in &rows {
        let _ = writeln!(csv, "{}", r.to_csv());
    }
    match &a.out {
        Some(p) => write_to(p, &csv)?,
        None => emit(out, &csv)?,
    }
    let all_met = rows.iter().all(|r| r.achieved >= r.target);
    Ok(if all_met { EXIT_OK } else { EXIT_DOMAIN })
}
