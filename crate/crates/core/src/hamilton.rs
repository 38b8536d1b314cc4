//! Hamiltonian cycles under the minimum-degree condition `δ ≥ n/2` and
//! Hamiltonian paths between prescribed ends under `δ > n/2`.
//!
//! Both constructions start from an arbitrary cyclic order of the vertices
//! and repeatedly remove one non-edge `xy` from it with a crossing exchange:
//! writing the cycle as `x = c_0, c_1, ..., c_{n-1} = y`, pick `i` with
//! `c_0 ~ c_{i+1}` and `c_i ~ c_{n-1}` and reverse `c_{i+1..n}`. When
//! `deg(x) + deg(y) ≥ n` such an `i` exists by pigeonhole, so the number of
//! non-edges on the cycle strictly drops and the loop terminates after at
//! most `n` exchanges. The path variant keeps a virtual closing edge `vu`
//! and needs two crossing positions, which `deg(x) + deg(y) ≥ n + 1` gives.

use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::matching::Matching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamiltonError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search exhausted without a Hamiltonian {0}")]
    SearchExhausted(&'static str),
    #[error("cycle of odd length {0}")]
    OddCycle(usize),
}

/// A cyclic vertex sequence; the closing edge joins the last vertex to the
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCycle(Vec<usize>);

/// A vertex sequence with fixed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPath(Vec<usize>);

impl VertexCycle {
    pub fn new(order: Vec<usize>) -> Self {
        VertexCycle(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.0.len();
        (0..n).map(|i| Edge::new(self.0[i], self.0[(i + 1) % n])).collect()
    }

    /// Maps vertex labels through `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> VertexCycle {
        VertexCycle(self.0.iter().map(|&v| map[v]).collect())
    }

    /// Consecutive vertices adjacent in `g` and every vertex of `g` visited
    /// exactly once.
    pub fn is_hamiltonian_in(&self, g: &Graph) -> bool {
        covers_exactly(&self.0, g.order())
            && self.0.len() >= 3
            && self.edges().iter().all(|e| g.contains_edge(e))
    }
}

impl VertexPath {
    pub fn new(order: Vec<usize>) -> Self {
        VertexPath(order)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
    }

    pub fn relabel(&self, map: &[usize]) -> VertexPath {
        VertexPath(self.0.iter().map(|&v| map[v]).collect())
    }

    pub fn is_hamiltonian_in(&self, g: &Graph) -> bool {
        covers_exactly(&self.0, g.order()) && self.edges().iter().all(|e| g.contains_edge(e))
    }

    /// The unique perfect matching of the path minus its first vertex
    /// (`skip_first`) or minus its last vertex. Requires odd length.
    pub fn matching_without_end(&self, skip_first: bool) -> Vec<Edge> {
        debug_assert_eq!(self.0.len() % 2, 1);
        let start = usize::from(skip_first);
        self.0[start..start + self.0.len() - 1]
            .chunks(2)
            .map(|p| Edge::new(p[0], p[1]))
            .collect()
    }
}

fn covers_exactly(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Initial sequence: greedy walk to the lowest unvisited neighbor, jumping
/// to the lowest unvisited vertex when stuck. `pinned` vertices are kept out
/// of the walk (the path variant places them at the ends).
fn greedy_order(g: &Graph, start: usize, pinned: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    for &p in pinned {
        seen[p] = true;
    }
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    seen[cur] = true;
    order.push(cur);
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| !seen[w])
            .or_else(|| (0..n).find(|&w| !seen[w]));
        match next {
            Some(w) => {
                seen[w] = true;
                order.push(w);
                cur = w;
            }
            None => return order,
        }
    }
}

/// Removes non-edges from the cyclic order `c` by crossing exchanges. The
/// unordered pair `keep` (if any) is treated as a virtual edge that must
/// stay on the cycle.
fn exchange_until_clean(g: &Graph, c: &mut [usize], keep: Option<Edge>) -> bool {
    let n = c.len();
    let is_real = |a: usize, b: usize| g.has_edge(a, b) || keep == Some(Edge::new(a, b));
    // Each successful exchange strictly reduces the number of non-edges.
    for _ in 0..=n {
        let Some(bad) = (0..n).find(|&i| !is_real(c[i], c[(i + 1) % n])) else {
            return true;
        };
        // Rotate so the non-edge joins c[n-1] and c[0].
        c.rotate_left((bad + 1) % n);
        let (x, y) = (c[0], c[n - 1]);
        let mut chosen = None;
        for i in 1..n.saturating_sub(2) {
            if g.has_edge(x, c[i + 1])
                && g.has_edge(c[i], y)
                && keep != Some(Edge::new(c[i], c[i + 1]))
            {
                // Prefer a position that removes a second non-edge.
                if !is_real(c[i], c[i + 1]) {
                    chosen = Some(i);
                    break;
                }
                chosen.get_or_insert(i);
            }
        }
        match chosen {
            Some(i) => c[i + 1..].reverse(),
            None => return false,
        }
    }
    (0..n).all(|i| is_real(c[i], c[(i + 1) % n]))
}

/// Exhaustive backtracking, used only for tiny graphs when the exchange
/// stalls (possible only on inputs outside the degree conditions).
fn backtrack_path(g: &Graph, path: &mut Vec<usize>, seen: &mut [bool], end: Option<usize>, close: bool) -> bool {
    let n = g.order();
    let cur = *path.last().expect("nonempty path");
    if path.len() == n {
        return match (end, close) {
            (Some(e), _) => cur == e,
            (None, true) => g.has_edge(cur, path[0]),
            (None, false) => true,
        };
    }
    let nbrs: Vec<usize> = g.neighbors(cur).iter().copied().collect();
    for w in nbrs {
        if seen[w] || (Some(w) == end && path.len() + 1 != n) {
            continue;
        }
        seen[w] = true;
        path.push(w);
        if backtrack_path(g, path, seen, end, close) {
            return true;
        }
        path.pop();
        seen[w] = false;
    }
    false
}

const BACKTRACK_LIMIT: usize = 14;

/// A Hamiltonian cycle of `g`; requires `n ≥ 3` and `δ ≥ n/2`.
pub fn dirac_cycle(g: &Graph) -> Result<VertexCycle, HamiltonError> {
    let n = g.order();
    if n < 3 {
        return Err(HamiltonError::PreconditionViolated(format!("order {n} < 3")));
    }
    if 2 * g.min_degree() < n {
        return Err(HamiltonError::PreconditionViolated(format!(
            "minimum degree {} < n/2 = {}",
            g.min_degree(),
            n as f64 / 2.0
        )));
    }
    let mut c = greedy_order(g, 0, &[]);
    if exchange_until_clean(g, &mut c, None) {
        return Ok(VertexCycle(c));
    }
    if n < BACKTRACK_LIMIT {
        let mut path = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        if backtrack_path(g, &mut path, &mut seen, None, true) {
            return Ok(VertexCycle(path));
        }
    }
    Err(HamiltonError::SearchExhausted("cycle"))
}

/// Every non-adjacent pair has degree sum at least `n + 1`.
fn ore_connected_condition(g: &Graph) -> bool {
    let n = g.order();
    (0..n).all(|a| {
        (a + 1..n).all(|b| g.has_edge(a, b) || g.degree(a) + g.degree(b) > n)
    })
}

/// A Hamiltonian path from `u` to `v`; requires `δ > n/2` (or, more
/// generally, degree sum `≥ n + 1` over every non-adjacent pair).
pub fn ore_path(g: &Graph, u: usize, v: usize) -> Result<VertexPath, HamiltonError> {
    let n = g.order();
    if u >= n || v >= n {
        return Err(HamiltonError::PreconditionViolated(format!("endpoint out of range for order {n}")));
    }
    if u == v {
        return Err(HamiltonError::PreconditionViolated("endpoints coincide".into()));
    }
    if 2 * g.min_degree() <= n && !ore_connected_condition(g) {
        return Err(HamiltonError::PreconditionViolated(format!(
            "minimum degree {} <= n/2 = {}",
            g.min_degree(),
            n as f64 / 2.0
        )));
    }
    if n == 2 {
        return if g.has_edge(u, v) {
            Ok(VertexPath(vec![u, v]))
        } else {
            Err(HamiltonError::SearchExhausted("path"))
        };
    }
    let mut c = greedy_order(g, u, &[v]);
    c.push(v);
    if exchange_until_clean(g, &mut c, Some(Edge::new(u, v))) {
        // Cut the cycle at the virtual edge so it reads u ... v.
        let pu = c.iter().position(|&x| x == u).expect("u on cycle");
        c.rotate_left(pu);
        if c[1] == v {
            c[1..].reverse();
        }
        debug_assert_eq!(c[n - 1], v);
        return Ok(VertexPath(c));
    }
    if n < BACKTRACK_LIMIT {
        let mut path = vec![u];
        let mut seen = vec![false; n];
        seen[u] = true;
        if backtrack_path(g, &mut path, &mut seen, Some(v), false) {
            return Ok(VertexPath(path));
        }
    }
    Err(HamiltonError::SearchExhausted("path"))
}

/// The two alternating edge classes of an even cycle, as matchings over a
/// host of order `host_n`. The first class contains the edge `c_0 c_1`.
pub fn even_cycle_matchings(c: &VertexCycle, host_n: usize) -> Result<(Matching, Matching), HamiltonError> {
    let len = c.len();
    if len % 2 == 1 {
        return Err(HamiltonError::OddCycle(len));
    }
    let edges = c.edges();
    let first = edges.iter().step_by(2).copied();
    let second = edges.iter().skip(1).step_by(2).copied();
    let a = Matching::new(host_n, first).expect("alternate cycle edges are vertex-disjoint");
    let b = Matching::new(host_n, second).expect("alternate cycle edges are vertex-disjoint");
    Ok((a, b))
}
