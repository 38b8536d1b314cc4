//! Maximum matchings in general graphs (Edmonds' blossom algorithm), Berge
//! witnesses, and factor-critical / bi-critical certification.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Graph, VertexSet};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("vertex {0} is covered twice")]
    VertexReused(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
}

/// A set of pairwise vertex-disjoint edges over a host of order `host_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    host_n: usize,
    edges: EdgeSet,
}

impl Matching {
    pub fn new<I>(host_n: usize, edges: I) -> Result<Self, MatchingError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut covered = vec![false; host_n];
        let mut set = EdgeSet::new();
        for e in edges {
            if e.u() == e.v() {
                return Err(MatchingError::LoopEdge(e.u()));
            }
            for x in e.ends() {
                if x >= host_n {
                    return Err(MatchingError::IndexOutOfRange { vertex: x, n: host_n });
                }
                if covered[x] {
                    return Err(MatchingError::VertexReused(x));
                }
                covered[x] = true;
            }
            set.insert(e);
        }
        Ok(Matching { host_n, edges: set })
    }

    pub fn empty(host_n: usize) -> Self {
        Matching {
            host_n,
            edges: EdgeSet::new(),
        }
    }

    pub(crate) fn from_mates(mates: &[usize]) -> Self {
        let edges = mates
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != NIL && u < v)
            .map(|(u, &v)| Edge::new(u, v))
            .collect();
        Matching {
            host_n: mates.len(),
            edges,
        }
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.edges.len() == self.host_n
    }

    pub fn covered(&self) -> VertexSet {
        self.edges.iter().flat_map(|e| e.ends()).collect()
    }

    /// `mate[v]`, or `None` for uncovered vertices.
    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.host_n];
        for e in &self.edges {
            m[e.u()] = Some(e.v());
            m[e.v()] = Some(e.u());
        }
        m
    }

    /// Disjoint union of several partial matchings over the same host.
    pub fn union_of<'a, I>(host_n: usize, parts: I) -> Result<Self, MatchingError>
    where
        I: IntoIterator<Item = &'a Matching>,
    {
        Matching::new(host_n, parts.into_iter().flat_map(|m| m.edges.iter().copied()))
    }

    /// Every edge of this matching is an edge of `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.edges.iter().all(|e| g.contains_edge(e))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| format!("{}-{}", e.u(), e.v())).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Edmonds' blossom search restricted to the vertices flagged in `active`.
struct Blossom<'a> {
    g: &'a Graph,
    active: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, active: &'a [bool]) -> Self {
        let n = g.order();
        Blossom {
            g,
            active,
            mate: vec![NIL; n],
            parent: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if !self.active[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.active[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(mut self, order: &[usize]) -> Vec<usize> {
        // Greedy start in scan order, then one search per exposed root.
        for &u in order {
            if !self.active[u] || self.mate[u] != NIL {
                continue;
            }
            if let Some(&v) = self
                .g
                .neighbors(u)
                .iter()
                .find(|&&v| self.active[v] && self.mate[v] == NIL)
            {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
        for &u in order {
            if self.active[u] && self.mate[u] == NIL {
                if let Some(end) = self.find_path(u) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }
}

fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn mates_on(g: &Graph, active: &[bool], order: &[usize]) -> Vec<usize> {
    Blossom::new(g, active).run(order)
}

/// A maximum matching of `g`. Deterministic: vertices are scanned in index
/// order.
pub fn maximum_matching(g: &Graph) -> Matching {
    maximum_matching_ordered(g, &identity_order(g.order()))
}

/// A maximum matching, scanning roots in the supplied order (a permutation
/// of the vertices). Different orders generally give different matchings.
pub fn maximum_matching_ordered(g: &Graph, order: &[usize]) -> Matching {
    let active = vec![true; g.order()];
    Matching::from_mates(&mates_on(g, &active, order))
}

/// Maximum matching of `G[x]`, expressed over the host's vertex indices.
pub fn maximum_matching_within(g: &Graph, x: &VertexSet) -> Matching {
    let mut active = vec![false; g.order()];
    for &v in x {
        active[v] = true;
    }
    let order: Vec<usize> = x.iter().copied().collect();
    Matching::from_mates(&mates_on(g, &active, &order))
}

pub fn perfect_matching(g: &Graph) -> Option<Matching> {
    perfect_matching_ordered(g, &identity_order(g.order()))
}

pub fn perfect_matching_ordered(g: &Graph, order: &[usize]) -> Option<Matching> {
    if g.order() % 2 == 1 {
        return None;
    }
    let m = maximum_matching_ordered(g, order);
    m.is_perfect().then_some(m)
}

/// A matching of `G[x]` covering all of `x`, if one exists.
pub fn perfect_matching_within(g: &Graph, x: &VertexSet) -> Option<Matching> {
    if x.len() % 2 == 1 {
        return None;
    }
    let m = maximum_matching_within(g, x);
    (2 * m.len() == x.len()).then_some(m)
}

fn matching_number_within(g: &Graph, active: &[bool]) -> usize {
    let order: Vec<usize> = (0..g.order()).filter(|&v| active[v]).collect();
    mates_on(g, active, &order)
        .iter()
        .filter(|&&m| m != NIL)
        .count()
        / 2
}

/// Per-vertex certificates: `certs[v]` is a perfect matching of `G[x] - v`.
pub type FactorCriticalCerts = BTreeMap<usize, Matching>;

/// Certificates that `G[x]` is factor-critical, or `None` if it is not.
pub fn factor_critical_within(g: &Graph, x: &VertexSet) -> Option<FactorCriticalCerts> {
    if x.len().is_multiple_of(2) {
        return None;
    }
    let mut certs = FactorCriticalCerts::new();
    for &v in x {
        let mut rest = x.clone();
        rest.remove(&v);
        certs.insert(v, perfect_matching_within(g, &rest)?);
    }
    Some(certs)
}

/// Factor-criticality of the whole graph, with the certificate map on success.
pub fn factor_critical_certificates(g: &Graph) -> Option<FactorCriticalCerts> {
    factor_critical_within(g, &g.vertices().collect())
}

pub fn is_factor_critical(g: &Graph) -> bool {
    factor_critical_certificates(g).is_some()
}

/// `G - u - v` has a perfect matching for every pair of distinct vertices.
pub fn is_bicritical(g: &Graph) -> bool {
    let n = g.order();
    if n % 2 == 1 {
        return false;
    }
    let mut active = vec![true; n];
    for u in 0..n {
        for v in u + 1..n {
            active[u] = false;
            active[v] = false;
            let ok = 2 * matching_number_within(g, &active) == n - 2;
            active[u] = true;
            active[v] = true;
            if !ok {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("graph has a perfect matching")]
    HasPerfectMatching,
    #[error("order {0} is odd")]
    OddOrder(usize),
}

/// A set `S` such that every component of `G - S` is odd and factor-critical
/// and there are at least `|S| + 2` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergeWitness {
    pub s: VertexSet,
    /// Components of `G - S` by increasing size (ties: smallest member).
    pub comps: Vec<VertexSet>,
    /// For each component, vertex → perfect matching of the component minus it.
    pub certs: Vec<FactorCriticalCerts>,
}

impl BergeWitness {
    pub fn q(&self) -> usize {
        self.comps.len()
    }

    pub fn s_len(&self) -> usize {
        self.s.len()
    }

    /// Checks every structural invariant against `g`, returning the first
    /// failure as text.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let s = self.s.len();
        let q = self.comps.len();
        if q < s + 2 {
            return Err(format!("q = {q} < s + 2 = {}", s + 2));
        }
        if q % 2 != s % 2 {
            return Err(format!("parity of q = {q} differs from s = {s}"));
        }
        let actual = g.components_avoiding(&self.s);
        let mut expected = self.comps.clone();
        expected.sort();
        let mut actual_sorted = actual;
        actual_sorted.sort();
        if expected != actual_sorted {
            return Err("comps are not the components of G - S".into());
        }
        for w in self.comps.windows(2) {
            if w[0].len() > w[1].len() {
                return Err("comps not sorted by size".into());
            }
        }
        if self.certs.len() != q {
            return Err("certificate count mismatch".into());
        }
        for (comp, certs) in self.comps.iter().zip(&self.certs) {
            if comp.len() % 2 == 0 {
                return Err(format!("component of even size {}", comp.len()));
            }
            if certs.len() != comp.len() {
                return Err("missing factor-critical certificate".into());
            }
            for (&v, m) in certs {
                let mut rest = comp.clone();
                rest.remove(&v);
                if m.covered() != rest || !m.is_subgraph_of(g) {
                    return Err(format!("certificate for vertex {v} is not a perfect matching of C - v"));
                }
            }
        }
        Ok(())
    }
}

fn odd_components(g: &Graph, s: &VertexSet) -> usize {
    g.components_avoiding(s)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

/// Gallai–Edmonds set `A(G)` of the subgraph induced by `x`: the vertices
/// outside `D(G)` adjacent to it, where `D(G)` is the set of vertices missed
/// by some maximum matching.
fn gallai_edmonds_a(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut active = vec![false; g.order()];
    for &v in x {
        active[v] = true;
    }
    let nu = matching_number_within(g, &active);
    let mut d = VertexSet::new();
    for &v in x {
        active[v] = false;
        if matching_number_within(g, &active) == nu {
            d.insert(v);
        }
        active[v] = true;
    }
    let mut a = VertexSet::new();
    for &v in &d {
        for &w in g.neighbors(v) {
            if x.contains(&w) && !d.contains(&w) {
                a.insert(w);
            }
        }
    }
    a
}

/// Berge witness of a graph without a perfect matching.
///
/// Starts from the Gallai–Edmonds set `A(G)` and grows it to an
/// inclusion-maximal barrier: even components and odd components that are not
/// factor-critical are split until every component of `G - S` is odd and
/// factor-critical.
pub fn berge_witness(g: &Graph) -> Result<BergeWitness, WitnessError> {
    let n = g.order();
    if n % 2 == 1 {
        return Err(WitnessError::OddOrder(n));
    }
    let nu = maximum_matching(g).len();
    if 2 * nu == n {
        return Err(WitnessError::HasPerfectMatching);
    }
    let deficiency = n - 2 * nu;
    let all: VertexSet = g.vertices().collect();
    let mut s = gallai_edmonds_a(g, &all);

    'grow: loop {
        let comps = g.components_avoiding(&s);
        if let Some(even) = comps.iter().find(|c| c.len() % 2 == 0) {
            s.insert(*even.iter().next().expect("nonempty component"));
            continue;
        }
        let mut certs = Vec::with_capacity(comps.len());
        for comp in &comps {
            match factor_critical_within(g, comp) {
                Some(c) => certs.push(c),
                None => {
                    // Some vertex v leaves C - v without a perfect matching;
                    // {v} ∪ A(C - v) keeps the deficiency and grows S.
                    for &v in comp {
                        let mut rest = comp.clone();
                        rest.remove(&v);
                        if perfect_matching_within(g, &rest).is_none() {
                            s.insert(v);
                            s.extend(gallai_edmonds_a(g, &rest));
                            continue 'grow;
                        }
                    }
                    unreachable!("odd component without a perfect-matching-free vertex deletion is factor-critical");
                }
            }
        }
        debug_assert_eq!(odd_components(g, &s) - s.len(), deficiency);
        let mut paired: Vec<(VertexSet, FactorCriticalCerts)> = comps.into_iter().zip(certs).collect();
        paired.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let (comps, certs) = paired.into_iter().unzip();
        return Ok(BergeWitness { s, comps, certs });
    }
}
