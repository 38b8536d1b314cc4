//! Families of edge-disjoint perfect matchings in `{D, D+1}`-graphs.
//!
//! Three strategies:
//! - `peel` removes perfect matchings of the residual greedily, restarting
//!   with a reshuffled scan order when it runs dry;
//! - `proof` additionally trades one member for two whenever the residual
//!   has no perfect matching (see [`augment`]), after first peeling the
//!   surplus degree down to the threshold when the host is denser;
//! - `exact` asks the oracle for a maximum family (small graphs only).

mod augment;
mod case_many;
mod case_one;
mod case_zero;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use augment::{
    augment, AugmentError, Augmentation, AugmentationContext, BarrierCase, Claim, ClaimToggles,
};
pub use case_zero::second_stage;
pub use crate::family::{verify_family, FamilyViolation, MatchingFamily};

use crate::family::residual;
use crate::graph::{d_threshold, Graph};
use crate::hamilton::{dirac_cycle, even_cycle_matchings};
use crate::matching::{perfect_matching, perfect_matching_ordered, Matching};
use crate::oracle::{max_disjoint_pm, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Peel,
    Proof,
    Exact,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Peel => "peel",
            Strategy::Proof => "proof",
            Strategy::Exact => "exact",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "peel" => Ok(Strategy::Peel),
            "proof" => Ok(Strategy::Proof),
            "exact" => Ok(Strategy::Exact),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub target: usize,
    pub strategy: Strategy,
    pub seed: u64,
    /// Extra attempts with fresh scan orders after the first one.
    pub restart_budget: usize,
    /// Peel surplus matchings as alternate classes of a Hamiltonian cycle.
    pub via_hamilton: bool,
    pub claims: ClaimToggles,
    /// Where to dump stuck states whose augmentation failed.
    pub reproducer_dir: Option<PathBuf>,
    /// Largest order for which a failing search falls back to the oracle.
    pub exact_limit: usize,
    /// Perfect matching enumeration cap for the oracle.
    pub oracle_cap: usize,
    /// Members to start every attempt from instead of an empty family.
    /// When given, the surplus peel is skipped.
    pub warm_start: Vec<Matching>,
}

impl DecomposeOptions {
    pub fn new(target: usize, strategy: Strategy) -> Self {
        DecomposeOptions {
            target,
            strategy,
            seed: 0,
            restart_budget: 32,
            via_hamilton: false,
            claims: ClaimToggles::all_on(),
            reproducer_dir: None,
            exact_limit: 16,
            oracle_cap: 2_000_000,
            warm_start: Vec::new(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// Surplus matching removed to bring the host down to the threshold.
    SurplusPeel,
    Peel,
    Augment,
    Stuck,
    Restart,
    ExactFallback,
    Exact,
}

/// One line of the JSON-lines trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: StepKind,
    /// Family size after the step.
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subcase: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl TraceRecord {
    fn new(step: StepKind, l: usize, start: Instant) -> Self {
        TraceRecord {
            step,
            l,
            s: None,
            q: None,
            subcase: None,
            detail: None,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// JSON-lines rendering; `with_timing = false` drops `elapsed_ms` so runs
/// can be compared byte for byte.
pub fn trace_to_jsonl(trace: &[TraceRecord], with_timing: bool) -> String {
    let mut out = String::new();
    for r in trace {
        let mut v = serde_json::to_value(r).expect("trace records serialize");
        if !with_timing {
            v.as_object_mut().expect("record is an object").remove("elapsed_ms");
        }
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub family: MatchingFamily,
    pub target: usize,
    pub achieved: usize,
    pub trace: Vec<TraceRecord>,
    pub elapsed: Duration,
    pub augment_calls: usize,
    /// Successful augmentations by barrier case `[s=0, s=1, s≥2]`.
    pub case_histogram: [usize; 3],
    pub claim_violations: usize,
}

#[derive(Debug, Clone, Error)]
pub enum DecomposeError {
    #[error("order {0} is odd")]
    OddOrder(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("target {} unreachable: {reason}", .result.target)]
    TargetUnreachable { reason: String, result: Box<DecompositionResult> },
    #[error("gave up with {} of {} matchings", .0.achieved, .0.target)]
    BudgetExhausted(Box<DecompositionResult>),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl DecomposeError {
    /// The best family found before failing, when there is one.
    pub fn partial(&self) -> Option<&DecompositionResult> {
        match self {
            DecomposeError::TargetUnreachable { result, .. } | DecomposeError::BudgetExhausted(result) => Some(result),
            _ => None,
        }
    }
}

struct Run<'a> {
    g: &'a Graph,
    opts: &'a DecomposeOptions,
    start: Instant,
    trace: Vec<TraceRecord>,
    augment_calls: usize,
    case_histogram: [usize; 3],
    claim_violations: usize,
}

impl<'a> Run<'a> {
    fn finish(self, family: Vec<Matching>) -> DecompositionResult {
        DecompositionResult {
            achieved: family.len(),
            family: MatchingFamily::new(self.g.clone(), family),
            target: self.opts.target,
            trace: self.trace,
            elapsed: self.start.elapsed(),
            augment_calls: self.augment_calls,
            case_histogram: self.case_histogram,
            claim_violations: self.claim_violations,
        }
    }

    fn record(&mut self, r: TraceRecord) {
        self.trace.push(r);
    }

    /// One greedy attempt with its own scan-order stream.
    fn attempt(&mut self, attempt: usize) -> Vec<Matching> {
        let g = self.g;
        let n = g.order();
        let opts = self.opts;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let mut order: Vec<usize> = (0..n).collect();

        let mut surplus = Vec::new();
        let mut base = g.clone();
        if opts.strategy == Strategy::Proof && opts.warm_start.is_empty() {
            let dn = d_threshold(n).expect("even order");
            let extra = g.min_degree().saturating_sub(dn).min(opts.target);
            for _ in 0..extra {
                let via_cycle = opts
                    .via_hamilton
                    .then(|| dirac_cycle(&base).ok().and_then(|c| even_cycle_matchings(&c, n).ok()))
                    .flatten()
                    .map(|(a, _)| a);
                let Some(m) = via_cycle.or_else(|| perfect_matching(&base)) else {
                    break;
                };
                base = base.without_edges(m.edges());
                surplus.push(m);
                let r = TraceRecord::new(StepKind::SurplusPeel, surplus.len(), self.start);
                self.record(r);
            }
        }

        let mut family: Vec<Matching> = opts.warm_start.clone();
        while surplus.len() + family.len() < opts.target {
            let h = residual(&base, &family);
            order.shuffle(&mut rng);
            if let Some(m) = perfect_matching_ordered(&h, &order) {
                family.push(m);
                let r = TraceRecord::new(StepKind::Peel, surplus.len() + family.len(), self.start);
                self.record(r);
                continue;
            }
            if opts.strategy != Strategy::Proof {
                let r = TraceRecord::new(StepKind::Stuck, surplus.len() + family.len(), self.start)
                    .detail("residual has no perfect matching");
                self.record(r);
                break;
            }
            self.augment_calls += 1;
            match augment(&base, &family, &opts.claims) {
                Ok(aug) => {
                    aug.apply(&mut family);
                    self.case_histogram[aug.case.slot()] += 1;
                    let mut r = TraceRecord::new(StepKind::Augment, surplus.len() + family.len(), self.start);
                    r.s = Some(aug.barrier);
                    r.q = Some(aug.components);
                    r.subcase = Some(aug.subcase.clone());
                    self.record(r);
                }
                Err(e) => {
                    if e.claim().is_some() {
                        self.claim_violations += 1;
                    }
                    let mut detail = e.to_string();
                    let reproduce = !matches!(e, AugmentError::PreconditionViolated(_));
                    if let (true, Some(dir)) = (reproduce, &opts.reproducer_dir) {
                        match write_reproducer(dir, &base, &family, opts.seed, attempt, &detail) {
                            Ok(path) => detail = format!("{detail}; reproducer {path}"),
                            Err(io) => detail = format!("{detail}; reproducer not written: {io}"),
                        }
                    }
                    let r = TraceRecord::new(StepKind::Stuck, surplus.len() + family.len(), self.start).detail(detail);
                    self.record(r);
                    break;
                }
            }
        }
        surplus.extend(family);
        surplus
    }
}

fn write_reproducer(
    dir: &std::path::Path,
    host: &Graph,
    family: &[Matching],
    seed: u64,
    attempt: usize,
    error: &str,
) -> std::io::Result<String> {
    std::fs::create_dir_all(dir)?;
    let stem = dir.join(format!("stuck-seed{seed}-attempt{attempt}"));
    let graph_path = stem.with_extension("graph.txt");
    let family_path = stem.with_extension("family.txt");
    std::fs::write(&graph_path, format!("# {error}\n{}", crate::io::write_graph(host)))?;
    std::fs::write(&family_path, crate::io::write_family(family))?;
    Ok(graph_path.display().to_string())
}

fn exact(g: &Graph, opts: &DecomposeOptions, run: &mut Run<'_>, step: StepKind) -> Result<Vec<Matching>, DecomposeError> {
    let packing = max_disjoint_pm(g, opts.oracle_cap)?;
    let r = TraceRecord::new(step, packing.max_disjoint, run.start).detail(format!(
        "pm_count={} nodes={}",
        packing.pm_count, packing.nodes_explored
    ));
    run.record(r);
    Ok(packing.witness_family.matchings)
}

pub fn decompose(g: &Graph, opts: &DecomposeOptions) -> Result<DecompositionResult, DecomposeError> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(DecomposeError::OddOrder(n));
    }
    let mut run = Run {
        g,
        opts,
        start: Instant::now(),
        trace: Vec::new(),
        augment_calls: 0,
        case_histogram: [0; 3],
        claim_violations: 0,
    };

    if opts.strategy == Strategy::Exact {
        let family = exact(g, opts, &mut run, StepKind::Exact)?;
        let result = run.finish(family);
        if result.achieved < opts.target {
            return Err(DecomposeError::TargetUnreachable {
                reason: format!("maximum family has {} matchings", result.achieved),
                result: Box::new(result),
            });
        }
        return Ok(result);
    }
    if opts.strategy == Strategy::Proof && n > 0 && !g.is_semiregular(g.min_degree()) {
        return Err(DecomposeError::PreconditionViolated(format!(
            "degrees span {}..={}, not a {{k, k+1}}-graph",
            g.min_degree(),
            g.max_degree()
        )));
    }
    if let Err(v) = verify_family(g, &opts.warm_start) {
        return Err(DecomposeError::PreconditionViolated(format!("starting family is not valid: {v}")));
    }
    if opts.target <= opts.warm_start.len() {
        return Ok(run.finish(opts.warm_start.clone()));
    }
    if perfect_matching(g).is_none() {
        let result = run.finish(Vec::new());
        return Err(DecomposeError::TargetUnreachable {
            reason: "no perfect matching".into(),
            result: Box::new(result),
        });
    }

    let mut best: Vec<Matching> = Vec::new();
    for attempt in 0..=opts.restart_budget {
        if attempt > 0 {
            let r = TraceRecord::new(StepKind::Restart, 0, run.start).detail(format!("attempt {attempt}"));
            run.record(r);
        }
        let family = run.attempt(attempt);
        if family.len() > best.len() {
            best = family;
        }
        if best.len() >= opts.target {
            return Ok(run.finish(best));
        }
    }
    if n <= opts.exact_limit {
        let family = exact(g, opts, &mut run, StepKind::ExactFallback)?;
        let result = run.finish(family);
        if result.achieved < opts.target {
            return Err(DecomposeError::TargetUnreachable {
                reason: format!("maximum family has {} matchings", result.achieved),
                result: Box::new(result),
            });
        }
        return Ok(result);
    }
    Err(DecomposeError::BudgetExhausted(Box::new(run.finish(best))))
}
