//! Exhaustive ground truth for small graphs: all perfect matchings, and the
//! largest family of pairwise edge-disjoint ones by branch and bound.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use thiserror::Error;

use crate::family::MatchingFamily;
use crate::graph::{Edge, Graph};
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("more than {cap} perfect matchings")]
    CapExceeded { cap: usize },
    #[error("order {0} is odd")]
    OddOrder(usize),
    #[error("search cancelled")]
    Cancelled,
}

/// Cooperative cancellation flag shared with a running search.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug)]
pub struct PackingResult {
    pub max_disjoint: usize,
    pub witness_family: MatchingFamily,
    pub pm_count: usize,
    pub nodes_explored: u64,
}

/// All perfect matchings, in the order produced by branching on the
/// smallest uncovered vertex and its neighbors in increasing order.
pub fn enumerate_perfect_matchings(g: &Graph, cap: usize) -> Result<Vec<Matching>, OracleError> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(OracleError::OddOrder(n));
    }
    let mut out = Vec::new();
    let mut covered = vec![false; n];
    let mut stack = Vec::with_capacity(n / 2);
    enumerate_rec(g, &mut covered, &mut stack, &mut out, cap)?;
    Ok(out)
}

fn enumerate_rec(
    g: &Graph,
    covered: &mut [bool],
    stack: &mut Vec<Edge>,
    out: &mut Vec<Matching>,
    cap: usize,
) -> Result<(), OracleError> {
    let Some(v) = covered.iter().position(|&c| !c) else {
        if out.len() == cap {
            return Err(OracleError::CapExceeded { cap });
        }
        out.push(Matching::new(g.order(), stack.iter().copied()).expect("disjoint by construction"));
        return Ok(());
    };
    covered[v] = true;
    for &w in g.neighbors(v) {
        if covered[w] {
            continue;
        }
        covered[w] = true;
        stack.push(Edge::new(v, w));
        let r = enumerate_rec(g, covered, stack, out, cap);
        stack.pop();
        covered[w] = false;
        r?;
    }
    covered[v] = false;
    Ok(())
}

/// Fixed-width bit set over edge indices.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

struct Packer<'a> {
    pms: &'a [Bits],
    /// For every vertex, the edge indices incident to it.
    incident: Vec<Vec<usize>>,
    edge_count: usize,
    best: Vec<usize>,
    ceiling: usize,
    nodes: u64,
    token: &'a CancelToken,
}

impl Packer<'_> {
    /// `avail` are the matchings still compatible with the partial family
    /// `chosen` and not excluded by earlier branches.
    fn search(&mut self, chosen: &mut Vec<usize>, avail: Vec<usize>) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.token.is_cancelled() {
            return Err(OracleError::Cancelled);
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        if avail.is_empty() || self.best.len() >= self.ceiling {
            return Ok(());
        }

        // Every further matching uses one usable edge at each vertex.
        let mut usable = vec![false; self.edge_count];
        for &p in &avail {
            for (i, u) in usable.iter_mut().enumerate() {
                *u |= self.pms[p].get(i);
            }
        }
        let (pivot, room) = self
            .incident
            .iter()
            .enumerate()
            .map(|(v, es)| (v, es.iter().filter(|&&e| usable[e]).count()))
            .min_by_key(|&(v, c)| (c, v))
            .expect("nonempty graph");
        if chosen.len() + room.min(avail.len()) <= self.best.len() {
            return Ok(());
        }

        let Some(edge) = self.incident[pivot].iter().copied().find(|&e| usable[e]) else {
            return Ok(());
        };
        let (with, without): (Vec<usize>, Vec<usize>) = avail.iter().partition(|&&p| self.pms[p].get(edge));
        for &p in &with {
            let rest: Vec<usize> = without
                .iter()
                .copied()
                .filter(|&r| !self.pms[r].intersects(&self.pms[p]))
                .collect();
            chosen.push(p);
            self.search(chosen, rest)?;
            chosen.pop();
            if self.best.len() >= self.ceiling {
                return Ok(());
            }
        }
        self.search(chosen, without)
    }
}

fn greedy(pms: &[Bits]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, p) in pms.iter().enumerate() {
        if out.iter().all(|&j| !pms[j].intersects(p)) {
            out.push(i);
        }
    }
    out
}

pub fn max_disjoint_pm(g: &Graph, cap: usize) -> Result<PackingResult, OracleError> {
    max_disjoint_pm_with(g, cap, &CancelToken::new())
}

pub fn max_disjoint_pm_with(g: &Graph, cap: usize, token: &CancelToken) -> Result<PackingResult, OracleError> {
    let pms = enumerate_perfect_matchings(g, cap)?;
    let index: std::collections::BTreeMap<Edge, usize> = g.edges().enumerate().map(|(i, e)| (e, i)).collect();
    let m = g.size();
    let bits: Vec<Bits> = pms
        .iter()
        .map(|pm| {
            let mut b = Bits::new(m);
            for e in pm.edges() {
                b.set(index[e]);
            }
            b
        })
        .collect();
    let mut incident = vec![Vec::new(); g.order()];
    for (e, &i) in &index {
        incident[e.u()].push(i);
        incident[e.v()].push(i);
    }
    let ceiling = if g.order() == 0 { 1 } else { g.min_degree().min(pms.len()) };
    let mut packer = Packer {
        pms: &bits,
        incident,
        edge_count: m,
        best: greedy(&bits),
        ceiling,
        nodes: 0,
        token,
    };
    packer.search(&mut Vec::new(), (0..bits.len()).collect())?;
    let mut best = packer.best.clone();
    best.sort_unstable();
    let family: Vec<Matching> = best.iter().map(|&i| pms[i].clone()).collect();
    Ok(PackingResult {
        max_disjoint: family.len(),
        witness_family: MatchingFamily::new(g.clone(), family),
        pm_count: pms.len(),
        nodes_explored: packer.nodes,
    })
}
