//! Bipartite matching with Hall-violator extraction, and the constructive
//! degree-budget lemma used by the `s ≥ 2` augmentation.
//!
//! Vertices are indexed per side: `X = 0..x_size`, `Y = 0..y_size`. When a
//! bipartite graph is written in the graph text format, `Y` is shifted to
//! `x_size..x_size + y_size`.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("bipartite vertex {vertex} out of range for side of size {size}")]
    IndexOutOfRange { vertex: usize, size: usize },
    #[error("duplicate bipartite edge ({0},{1})")]
    DuplicateEdge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    x_size: usize,
    y_size: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl BipartiteGraph {
    pub fn new<I>(x_size: usize, y_size: usize, edges: I) -> Result<Self, BipartiteError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![BTreeSet::new(); x_size];
        for (x, y) in edges {
            if x >= x_size {
                return Err(BipartiteError::IndexOutOfRange { vertex: x, size: x_size });
            }
            if y >= y_size {
                return Err(BipartiteError::IndexOutOfRange { vertex: y, size: y_size });
            }
            if !adj[x].insert(y) {
                return Err(BipartiteError::DuplicateEdge(x, y));
            }
        }
        Ok(BipartiteGraph { x_size, y_size, adj })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn neighbors(&self, x: usize) -> &BTreeSet<usize> {
        &self.adj[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].contains(&y)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn y_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.y_size];
        for (_, y) in self.edges() {
            d[y] += 1;
        }
        d
    }

    /// Copy with the given `(x, y)` pairs deleted.
    pub fn without_pairs(&self, pairs: &[(usize, usize)]) -> BipartiteGraph {
        let mut b = self.clone();
        for &(x, y) in pairs {
            b.adj[x].remove(&y);
        }
        b
    }

    /// The same graph in the general graph representation, with `Y` shifted
    /// by `x_size`.
    pub fn to_graph(&self) -> Graph {
        Graph::new(
            self.x_size + self.y_size,
            self.edges().map(|(x, y)| (x, self.x_size + y)),
        )
        .expect("bipartite edges are simple")
    }

    /// Induced subgraph on the kept vertices, relabeled in increasing order.
    fn restrict(&self, keep_x: &[usize], keep_y: &[usize]) -> BipartiteGraph {
        let mut y_index = vec![NIL; self.y_size];
        for (new, &old) in keep_y.iter().enumerate() {
            y_index[old] = new;
        }
        let adj = keep_x
            .iter()
            .map(|&x| {
                self.adj[x]
                    .iter()
                    .filter_map(|&y| (y_index[y] != NIL).then_some(y_index[y]))
                    .collect()
            })
            .collect();
        BipartiteGraph {
            x_size: keep_x.len(),
            y_size: keep_y.len(),
            adj,
        }
    }
}

/// A set `W ⊆ X` whose neighborhood is strictly smaller than `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolator {
    pub w: VertexSet,
    pub neighborhood: VertexSet,
}

/// Matched `(x, y)` pairs sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BipartiteMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl BipartiteMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

struct HopcroftKarp<'a> {
    b: &'a BipartiteGraph,
    mate_x: Vec<usize>,
    mate_y: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(b: &'a BipartiteGraph) -> Self {
        HopcroftKarp {
            b,
            mate_x: vec![NIL; b.x_size],
            mate_y: vec![NIL; b.y_size],
            dist: vec![NIL; b.x_size],
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for x in 0..self.b.x_size {
            if self.mate_x[x] == NIL {
                self.dist[x] = 0;
                queue.push_back(x);
            } else {
                self.dist[x] = NIL;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &self.b.adj[x] {
                let next = self.mate_y[y];
                if next == NIL {
                    found = true;
                } else if self.dist[next] == NIL {
                    self.dist[next] = self.dist[x] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&mut self, x: usize) -> bool {
        let ys: Vec<usize> = self.b.adj[x].iter().copied().collect();
        for y in ys {
            let next = self.mate_y[y];
            if next == NIL || (self.dist[next] == self.dist[x] + 1 && self.dfs(next)) {
                self.mate_x[x] = y;
                self.mate_y[y] = x;
                return true;
            }
        }
        self.dist[x] = NIL;
        false
    }

    fn run(mut self) -> (Vec<usize>, Vec<usize>) {
        while self.bfs() {
            for x in 0..self.b.x_size {
                if self.mate_x[x] == NIL {
                    self.dfs(x);
                }
            }
        }
        (self.mate_x, self.mate_y)
    }
}

/// A matching saturating `X`, or a Hall violator read off the alternating
/// forest grown from an exposed `X`-vertex.
pub fn bipartite_matching_or_violator(b: &BipartiteGraph) -> Result<BipartiteMatching, HallViolator> {
    let (mate_x, mate_y) = HopcroftKarp::new(b).run();
    let exposed: Vec<usize> = (0..b.x_size).filter(|&x| mate_x[x] == NIL).collect();
    if exposed.is_empty() {
        let pairs = mate_x.iter().enumerate().map(|(x, &y)| (x, y)).collect();
        return Ok(BipartiteMatching { pairs });
    }
    // Alternating reachability from one exposed vertex: all reached Y are
    // matched (else the matching was not maximum), so |N(W)| = |W| - 1.
    let mut w = VertexSet::new();
    let mut ny = VertexSet::new();
    let mut queue = VecDeque::from([exposed[0]]);
    w.insert(exposed[0]);
    while let Some(x) = queue.pop_front() {
        for &y in &b.adj[x] {
            if ny.insert(y) {
                let next = mate_y[y];
                debug_assert_ne!(next, NIL);
                if w.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    Err(HallViolator { w, neighborhood: ny })
}

/// Maximum matching size (for callers that only need the number).
pub fn bipartite_matching_number(b: &BipartiteGraph) -> usize {
    let (mate_x, _) = HopcroftKarp::new(b).run();
    mate_x.iter().filter(|&&y| y != NIL).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Lemma31Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no perfect matching despite valid preconditions (violator of size {})", .0.w.len())]
    InternalContradiction(HallViolator),
}

/// Perfect matching of `B - S_ex - U_ex` where `B` has parts `S` (the `X`
/// side, size `s`) and `U` (the `Y` side, size `s + 1`).
///
/// Preconditions, all checked: `2d ≥ s + k + 2`, `d ≥ k + 1`, every
/// `U`-vertex has degree at least `d`, every `S`-vertex has degree at most
/// `d + 2` with at most one of degree exactly `d + 2`, `|S_ex| = k`,
/// `|U_ex| = k + 1`. Under these a perfect matching always exists; failing
/// to find one is reported as `InternalContradiction`.
pub fn lemma31_matching(
    b: &BipartiteGraph,
    d: usize,
    k: usize,
    s_ex: &VertexSet,
    u_ex: &VertexSet,
) -> Result<BipartiteMatching, Lemma31Error> {
    let fail = |msg: String| Err(Lemma31Error::PreconditionViolated(msg));
    let s = b.x_size;
    if b.y_size != s + 1 {
        return fail(format!("|U| = {} but |S| + 1 = {}", b.y_size, s + 1));
    }
    if 2 * d < s + k + 2 {
        return fail(format!("d >= (s+k)/2 + 1 fails: d = {d}, s = {s}, k = {k}"));
    }
    if d < k + 1 {
        return fail(format!("d >= k + 1 fails: d = {d}, k = {k}"));
    }
    if s_ex.len() != k || s_ex.iter().any(|&x| x >= s) {
        return fail(format!("S' must be {k} vertices of S"));
    }
    if u_ex.len() != k + 1 || u_ex.iter().any(|&y| y > s) {
        return fail(format!("U' must be {} vertices of U", k + 1));
    }
    if let Some((y, deg)) = b.y_degrees().into_iter().enumerate().find(|&(_, deg)| deg < d) {
        return fail(format!("U-vertex {y} has degree {deg} < d = {d}"));
    }
    let mut at_cap = 0;
    for x in 0..s {
        let deg = b.x_degree(x);
        if deg > d + 2 {
            return fail(format!("S-vertex {x} has degree {deg} > d + 2 = {}", d + 2));
        }
        if deg == d + 2 {
            at_cap += 1;
        }
    }
    if at_cap > 1 {
        return fail(format!("{at_cap} S-vertices have degree d + 2"));
    }

    let keep_x: Vec<usize> = (0..s).filter(|x| !s_ex.contains(x)).collect();
    let keep_y: Vec<usize> = (0..=s).filter(|y| !u_ex.contains(y)).collect();
    let reduced = b.restrict(&keep_x, &keep_y);
    match bipartite_matching_or_violator(&reduced) {
        Ok(m) => Ok(BipartiteMatching {
            pairs: m.pairs.iter().map(|&(x, y)| (keep_x[x], keep_y[y])).collect(),
        }),
        Err(v) => Err(Lemma31Error::InternalContradiction(HallViolator {
            w: v.w.iter().map(|&x| keep_x[x]).collect(),
            neighborhood: v.neighborhood.iter().map(|&y| keep_y[y]).collect(),
        })),
    }
}
