//! Growing a stuck family by one: when the residual graph has no perfect
//! matching, one family member `M` is traded for two edge-disjoint perfect
//! matchings of `residual ∪ M`.
//!
//! The residual's Berge witness `S` picks the construction. Every structural
//! fact the constructions rely on is checked at runtime and reported as a
//! [`Claim`] violation instead of being assumed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{case_many, case_one, case_zero};
use crate::bipartite::Lemma31Error;
use crate::family::{residual, verify_family};
use crate::graph::{d_threshold, Edge, Graph, VertexSet};
use crate::hamilton::{dirac_cycle, ore_path, HamiltonError, VertexCycle, VertexPath};
use crate::matching::{berge_witness, BergeWitness, Matching, WitnessError};

/// Runtime-checked structural facts, identified by role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// `s ≥ D - l` when the barrier has at least two vertices.
    BarrierSize,
    /// `q = s + 2`.
    ComponentCount,
    /// All components but the largest are single vertices.
    SingletonComponents,
    /// The large component has order `n - 2s - 1` within `[n/4 + 1, n/2 - 1]`.
    LargeComponentOrder,
    /// The large component has a small boundary and is Hamiltonian-connected.
    LargeComponentBoundary,
    /// Some family member crosses the boundary of the large component at
    /// least three times.
    CrossingMatching,
    /// The degree budget of the bipartite matching step holds.
    LemmaBudget,
    /// The chosen member has enough edges inside the singleton set.
    SingletonPairs,
    /// Components have order at least `D - l - s + 1`.
    ComponentOrder,
    /// Order bounds on the three components around a single barrier vertex.
    HubComponentOrder,
    /// Some member has two edges between the two smaller hub components.
    TwoCrossingEdges,
    /// The barrier vertex has two residual neighbors in the third component.
    HubNeighbors,
    /// Some member crosses between the two components at least three times.
    OddCrossing,
    /// Residual after a swap splits into two large factor-critical components.
    SplitShape,
    /// The smaller new component lies inside the larger old one.
    Nesting,
    /// The shared core `V22` meets the Dirac bound.
    CoreDirac,
    /// Two disjoint edges leaving the core exist.
    DisjointPair,
    /// The second exchange matching exists and keeps a crossing edge of both
    /// earlier matchings.
    SecondMatching,
    /// After both exchanges a perfect matching of the remainder exists.
    FinalContradiction,
}

impl Claim {
    pub const ALL: [Claim; 19] = [
        Claim::BarrierSize,
        Claim::ComponentCount,
        Claim::SingletonComponents,
        Claim::LargeComponentOrder,
        Claim::LargeComponentBoundary,
        Claim::CrossingMatching,
        Claim::LemmaBudget,
        Claim::SingletonPairs,
        Claim::ComponentOrder,
        Claim::HubComponentOrder,
        Claim::TwoCrossingEdges,
        Claim::HubNeighbors,
        Claim::OddCrossing,
        Claim::SplitShape,
        Claim::Nesting,
        Claim::CoreDirac,
        Claim::DisjointPair,
        Claim::SecondMatching,
        Claim::FinalContradiction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::BarrierSize => "barrier-size",
            Claim::ComponentCount => "component-count",
            Claim::SingletonComponents => "singleton-components",
            Claim::LargeComponentOrder => "large-component-order",
            Claim::LargeComponentBoundary => "large-component-boundary",
            Claim::CrossingMatching => "crossing-matching",
            Claim::LemmaBudget => "lemma-budget",
            Claim::SingletonPairs => "singleton-pairs",
            Claim::ComponentOrder => "component-order",
            Claim::HubComponentOrder => "hub-component-order",
            Claim::TwoCrossingEdges => "two-crossing-edges",
            Claim::HubNeighbors => "hub-neighbors",
            Claim::OddCrossing => "odd-crossing",
            Claim::SplitShape => "split-shape",
            Claim::Nesting => "nesting",
            Claim::CoreDirac => "core-dirac",
            Claim::DisjointPair => "disjoint-pair",
            Claim::SecondMatching => "second-matching",
            Claim::FinalContradiction => "final-contradiction",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

/// Which claim assertions are checked. All are on by default. Turning one
/// off only skips its assertion; a construction step that cannot proceed
/// without the fact still fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimToggles {
    disabled: BTreeSet<Claim>,
}

impl ClaimToggles {
    pub fn all_on() -> Self {
        Self::default()
    }

    pub fn disable(&mut self, c: Claim) -> &mut Self {
        self.disabled.insert(c);
        self
    }

    pub fn is_enabled(&self, c: Claim) -> bool {
        !self.disabled.contains(&c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BarrierCase {
    Several,
    Single,
    Empty,
}

impl BarrierCase {
    pub fn of(s: usize) -> Self {
        match s {
            0 => BarrierCase::Empty,
            1 => BarrierCase::Single,
            _ => BarrierCase::Several,
        }
    }

    /// Slot in `[s=0, s=1, s≥2]` histograms.
    pub fn slot(self) -> usize {
        match self {
            BarrierCase::Empty => 0,
            BarrierCase::Single => 1,
            BarrierCase::Several => 2,
        }
    }
}

impl fmt::Display for BarrierCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BarrierCase::Several => "s>=2",
            BarrierCase::Single => "s=1",
            BarrierCase::Empty => "s=0",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("residual graph has a perfect matching")]
    ResidualHasPerfectMatching,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("claim {claim} violated: {detail}")]
    ClaimViolated { claim: Claim, detail: String },
    #[error("hamiltonian step failed: {0}")]
    Hamilton(#[from] HamiltonError),
    #[error("bipartite step failed: {0}")]
    Lemma(#[from] Lemma31Error),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl AugmentError {
    pub fn claim(&self) -> Option<Claim> {
        match self {
            AugmentError::ClaimViolated { claim, .. } => Some(*claim),
            _ => None,
        }
    }
}

/// The outcome of one augmentation. Applying it replaces `replaced` by
/// `first` and appends `second`. When `swapped` is set, that member is first
/// overwritten by the given matching (an intermediate exchange that keeps the
/// family size) and the rest applies to the swapped family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub replaced: usize,
    pub first: Matching,
    pub second: Matching,
    pub swapped: Option<(usize, Matching)>,
    pub case: BarrierCase,
    /// Barrier size and component count of the residual that was stuck.
    pub barrier: usize,
    pub components: usize,
    pub subcase: String,
}

impl Augmentation {
    pub fn apply(&self, family: &mut Vec<Matching>) {
        if let Some((i, m)) = &self.swapped {
            family[*i] = m.clone();
        }
        family[self.replaced] = self.first.clone();
        family.push(self.second.clone());
    }
}

/// A stuck state: the host, a family whose residual has no perfect matching,
/// and that residual's witness.
#[derive(Clone, Debug)]
pub struct AugmentationContext<'a> {
    pub host: &'a Graph,
    pub family: Vec<Matching>,
    pub residual: Graph,
    pub witness: BergeWitness,
    pub case: BarrierCase,
    /// Lower degree `D` of the `{D, D+1}` host.
    pub degree: usize,
    pub claims: &'a ClaimToggles,
}

impl<'a> AugmentationContext<'a> {
    pub fn new(host: &'a Graph, family: Vec<Matching>, claims: &'a ClaimToggles) -> Result<Self, AugmentError> {
        let n = host.order();
        let pre = |m: String| Err(AugmentError::PreconditionViolated(m));
        if n < 34 || n % 2 == 1 {
            return pre(format!("order {n} must be even and at least 34"));
        }
        let degree = host.min_degree();
        let dn = d_threshold(n).expect("even order");
        if !host.is_semiregular(degree) || degree < dn {
            return pre(format!(
                "host must be a {{D, D+1}}-graph with D >= {dn}; degrees span {}..={}",
                degree,
                host.max_degree()
            ));
        }
        let l = family.len();
        if l + 1 > n.div_ceil(4) {
            return pre(format!("family size {l} exceeds ceil(n/4) - 1 = {}", n.div_ceil(4) - 1));
        }
        if let Err(v) = verify_family(host, &family) {
            return pre(format!("family is not valid: {v}"));
        }
        let residual = residual(host, &family);
        let witness = match berge_witness(&residual) {
            Ok(w) => w,
            Err(WitnessError::HasPerfectMatching) => return Err(AugmentError::ResidualHasPerfectMatching),
            Err(e) => return pre(e.to_string()),
        };
        let case = BarrierCase::of(witness.s_len());
        Ok(AugmentationContext {
            host,
            family,
            residual,
            witness,
            case,
            degree,
            claims,
        })
    }

    pub fn n(&self) -> usize {
        self.host.order()
    }

    pub fn l(&self) -> usize {
        self.family.len()
    }

    /// `D - l`, the lower residual degree.
    pub fn slack(&self) -> usize {
        self.degree - self.l()
    }

    /// Asserts a claim unless it is toggled off.
    pub(super) fn check(&self, claim: Claim, holds: bool, detail: impl FnOnce() -> String) -> Result<(), AugmentError> {
        if holds || !self.claims.is_enabled(claim) {
            Ok(())
        } else {
            Err(violated(claim, detail()))
        }
    }

    /// `residual ∪ family[i]`.
    pub(super) fn with_member(&self, i: usize) -> Graph {
        self.residual
            .union_edges(self.family[i].edges())
            .expect("family edges are absent from the residual")
    }
}

pub(super) fn violated(claim: Claim, detail: String) -> AugmentError {
    AugmentError::ClaimViolated { claim, detail }
}

/// A constructive step that cannot proceed without the claimed fact.
pub(super) fn require(claim: Claim, holds: bool, detail: impl FnOnce() -> String) -> Result<(), AugmentError> {
    if holds {
        Ok(())
    } else {
        Err(violated(claim, detail()))
    }
}

/// Edges of `m` with one end in `a` and the other in `b`, in canonical order.
pub(super) fn crossing(m: &Matching, a: &VertexSet, b: &VertexSet) -> Vec<Edge> {
    m.edges()
        .iter()
        .filter(|e| (a.contains(&e.u()) && b.contains(&e.v())) || (b.contains(&e.u()) && a.contains(&e.v())))
        .copied()
        .collect()
}

/// The end of `e` inside `set`.
pub(super) fn end_in(e: &Edge, set: &VertexSet) -> usize {
    if set.contains(&e.u()) {
        e.u()
    } else {
        e.v()
    }
}

/// Hamiltonian path of `g[set]` between two of its vertices.
pub(super) fn path_within(g: &Graph, set: &VertexSet, from: usize, to: usize) -> Result<VertexPath, HamiltonError> {
    let (sub, map) = g.induced_subgraph(set).expect("set within range");
    let local = |v: usize| map.binary_search(&v).expect("endpoint inside set");
    Ok(ore_path(&sub, local(from), local(to))?.relabel(&map))
}

/// Hamiltonian cycle of `g[set]`.
pub(super) fn cycle_within(g: &Graph, set: &VertexSet) -> Result<VertexCycle, HamiltonError> {
    let (sub, map) = g.induced_subgraph(set).expect("set within range");
    Ok(dirac_cycle(&sub)?.relabel(&map))
}

pub(super) fn assemble<I>(n: usize, edges: I) -> Result<Matching, AugmentError>
where
    I: IntoIterator<Item = Edge>,
{
    Matching::new(n, edges).map_err(|e| AugmentError::Internal(format!("assembled edges do not form a matching: {e}")))
}

/// Trades one member of a stuck family for two.
pub fn augment(host: &Graph, family: &[Matching], claims: &ClaimToggles) -> Result<Augmentation, AugmentError> {
    let ctx = AugmentationContext::new(host, family.to_vec(), claims)?;
    let aug = match ctx.case {
        BarrierCase::Empty => case_zero::augment_empty(&ctx)?,
        _ => augment_nonempty(&ctx)?,
    };
    let mut grown = family.to_vec();
    aug.apply(&mut grown);
    if let Err(v) = verify_family(host, &grown) {
        return Err(AugmentError::Internal(format!("grown family fails verification: {v}")));
    }
    Ok(aug)
}

/// Dispatch for a nonempty barrier.
pub(super) fn augment_nonempty(ctx: &AugmentationContext<'_>) -> Result<Augmentation, AugmentError> {
    match ctx.case {
        BarrierCase::Several => case_many::augment_several(ctx),
        BarrierCase::Single => case_one::augment_single(ctx),
        BarrierCase::Empty => Err(AugmentError::Internal("empty barrier routed to nonempty dispatch".into())),
    }
}
