//! Simple undirected graphs on dense vertex indices `0..n`.
//!
//! All set-valued outputs are sorted so that results are reproducible byte for
//! byte. Graph values are immutable once built; the derived-graph helpers
//! (`without_edges`, `with_edges`, ...) return new graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Sorted set of vertex indices.
pub type VertexSet = BTreeSet<usize>;

/// Sorted set of canonical edges.
pub type EdgeSet = BTreeSet<Edge>;

/// An unordered vertex pair stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    /// Canonicalizes the pair. Loops are representable here; `Graph::new`
    /// is where they are rejected.
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }

    pub fn ends(&self) -> [usize; 2] {
        [self.0, self.1]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint opposite to `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if self.0 == x {
            self.1
        } else if self.1 == x {
            self.0
        } else {
            panic!("vertex {x} is not an endpoint of {self}")
        }
    }

    pub fn touches(&self, other: &Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for order {n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("order {0} is odd")]
    OddOrder(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicates are rejected rather than
    /// merged.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert(u, v)?;
        }
        Ok(g)
    }

    pub fn from_edges<'a, I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        Graph::new(n, edges.into_iter().map(|e| (e.0, e.1)))
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    fn insert(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if !self.adj[u].insert(v) {
            return Err(GraphError::DuplicateEdge(Edge::new(u, v)));
        }
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::IndexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn check_set(&self, x: &VertexSet) -> Result<(), GraphError> {
        match x.iter().next_back() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(BTreeSet::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.range(u + 1..).map(move |&v| Edge(u, v))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// True iff every degree is `k` or `k + 1`.
    pub fn is_semiregular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k || a.len() == k + 1)
    }

    /// Copy of this graph with the given edges deleted. Edges not present
    /// are ignored.
    pub fn without_edges<'a, I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            if g.adj[e.0].remove(&e.1) {
                g.adj[e.1].remove(&e.0);
                g.m -= 1;
            }
        }
        g
    }

    /// Copy of this graph with extra edges; edges already present are an
    /// error.
    pub fn with_edges<'a, I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            g.insert(e.0, e.1)?;
        }
        Ok(g)
    }

    /// Same vertex set, edge set `self ∪ edges`; overlapping edges are merged.
    pub fn union_edges<'a, I>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            if !g.contains_edge(e) {
                g.insert(e.0, e.1)?;
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(&v) {
                    g.adj[u].insert(v);
                    g.adj[v].insert(u);
                    g.m += 1;
                }
            }
        }
        g
    }

    /// Edges with exactly one endpoint in `x`.
    pub fn edge_boundary(&self, x: &VertexSet) -> Result<EdgeSet, GraphError> {
        self.check_set(x)?;
        let mut out = EdgeSet::new();
        for &u in x {
            for &v in &self.adj[u] {
                if !x.contains(&v) {
                    out.insert(Edge::new(u, v));
                }
            }
        }
        Ok(out)
    }

    /// Edges `uv` with `u ∈ x, v ∈ y` (in either orientation).
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> Result<EdgeSet, GraphError> {
        self.check_set(x)?;
        self.check_set(y)?;
        let mut out = EdgeSet::new();
        for &u in x {
            for &v in &self.adj[u] {
                if y.contains(&v) {
                    out.insert(Edge::new(u, v));
                }
            }
        }
        Ok(out)
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    /// Connected components of `G - removed`, each sorted, listed by smallest
    /// member.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        for &r in removed {
            if r < self.n {
                seen[r] = true;
            }
        }
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = VertexSet::new();
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// `G[x]` relabeled to `0..|x|` in increasing order, together with the
    /// new-to-old map (`map[new] = old`).
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_set(x)?;
        let map: Vec<usize> = x.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let mut g = Graph::empty(map.len());
        for (new, &old) in map.iter().enumerate() {
            for &w in self.adj[old].range(old + 1..) {
                let j = index[w];
                if j != usize::MAX {
                    g.adj[new].insert(j);
                    g.adj[j].insert(new);
                    g.m += 1;
                }
            }
        }
        Ok((g, map))
    }
}

/// `2⌈n/4⌉ − 1` for even `n ≥ 2`.
pub fn d_threshold(n: usize) -> Result<usize, GraphError> {
    if n % 2 == 1 || n < 2 {
        return Err(GraphError::OddOrder(n));
    }
    Ok(2 * n.div_ceil(4) - 1)
}
