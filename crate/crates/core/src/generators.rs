//! Sharp instances, counterexamples and random semi-regular graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{family}: order {n} not allowed ({reason})")]
    BadOrder { family: &'static str, n: usize, reason: &'static str },
    #[error("no {{{k},{}}}-graph construction of order {n}", k + 1)]
    InfeasibleDegree { n: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SharpG1,
    SharpG2,
    Counterexample,
    RandomSemiregular,
    Complete,
    Cycle,
    Petersen,
    /// `K_{n/2,n/2}`.
    CompleteBipartite,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::SharpG1,
        Family::SharpG2,
        Family::Counterexample,
        Family::RandomSemiregular,
        Family::Complete,
        Family::Cycle,
        Family::Petersen,
        Family::CompleteBipartite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SharpG1 => "sharp-g1",
            Family::SharpG2 => "sharp-g2",
            Family::Counterexample => "counterexample",
            Family::RandomSemiregular => "random-semiregular",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Petersen => "petersen",
            Family::CompleteBipartite => "complete-bipartite",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    /// Base degree; used by `RandomSemiregular` only.
    pub k: usize,
    pub seed: u64,
}

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generator emits a simple graph")
}

fn clique_edges(vs: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    vs.iter()
        .enumerate()
        .flat_map(move |(i, &a)| vs[i + 1..].iter().map(move |&b| (a, b)))
}

pub fn complete(n: usize) -> Graph {
    let vs: Vec<usize> = (0..n).collect();
    build(n, clique_edges(&vs).collect())
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::BadOrder { family: "cycle", n, reason: "needs n >= 3" });
    }
    Ok(build(n, (0..n).map(|i| (i, (i + 1) % n)).collect()))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect())
}

pub fn petersen() -> Graph {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, i + 5));
    }
    build(10, e)
}

/// `K_{n/2-1, n/2+1}` plus a perfect matching inside the larger part.
/// Part `A` is `0..n/2-1`, part `B` the rest.
pub fn gen_sharp_g1(n: usize) -> Result<Graph, GeneratorError> {
    if n < 6 || n % 2 == 1 || (n / 2).is_multiple_of(2) {
        return Err(GeneratorError::BadOrder { family: "sharp-g1", n, reason: "needs n >= 6 with n/2 odd" });
    }
    let a = n / 2 - 1;
    let mut g = complete_bipartite(a, n - a).edges().map(|e| (e.u(), e.v())).collect::<Vec<_>>();
    g.extend((a..n).step_by(2).map(|b| (b, b + 1)));
    Ok(build(n, g))
}

/// `K_{n/2-1, n/2+1}` minus the matching `{(A_i, B_i)}`, plus B-internal
/// edges `(B_1,B_2), (B_3,B_4), ..., (B_{a-2},B_{a-1})` and `(B_0,B_{a-1})`
/// covering the matched B-vertices, where `a = n/2 - 1`.
pub fn gen_sharp_g2(n: usize) -> Result<Graph, GeneratorError> {
    if n < 8 || n % 2 == 1 || (n / 2) % 2 == 1 {
        return Err(GeneratorError::BadOrder { family: "sharp-g2", n, reason: "needs n >= 8 with n/2 even" });
    }
    let a = n / 2 - 1;
    let b = |i: usize| a + i;
    let mut e: Vec<(usize, usize)> = (0..a)
        .flat_map(|x| (a..n).map(move |y| (x, y)))
        .filter(|&(x, y)| y != b(x))
        .collect();
    e.extend((1..a).step_by(2).map(|i| (b(i), b(i + 1))));
    e.push((b(0), b(a - 1)));
    Ok(build(n, e))
}

/// A `(D_n - 1)`-regular graph of order `n` without a perfect matching: two
/// cliques of odd order `n/2`, or `K_{n/2-1}` beside `K_{n/2+1}` minus a
/// Hamiltonian cycle.
pub fn gen_counterexample(n: usize) -> Result<Graph, GeneratorError> {
    if n < 6 || n % 2 == 1 {
        return Err(GeneratorError::BadOrder { family: "counterexample", n, reason: "needs even n >= 6" });
    }
    let half = n / 2;
    let split = if half % 2 == 1 { half } else { half - 1 };
    let left: Vec<usize> = (0..split).collect();
    let right: Vec<usize> = (split..n).collect();
    let mut e: Vec<(usize, usize)> = clique_edges(&left).chain(clique_edges(&right)).collect();
    if half.is_multiple_of(2) {
        let len = right.len();
        let ham: Vec<Edge> = (0..len).map(|i| Edge::new(right[i], right[(i + 1) % len])).collect();
        e.retain(|&(x, y)| !ham.contains(&Edge::new(x, y)));
    }
    Ok(build(n, e))
}

/// `k`-regular circulant: offsets `1..=k/2`, plus the antipodal offset when
/// `k` is odd. Requires even `n` and `k < n`.
pub fn circulant(n: usize, k: usize) -> Graph {
    let mut e = Vec::new();
    for v in 0..n {
        for off in 1..=k / 2 {
            let w = (v + off) % n;
            e.push((v.min(w), v.max(w)));
        }
    }
    if k % 2 == 1 {
        e.extend((0..n / 2).map(|v| (v, v + n / 2)));
    }
    e.sort_unstable();
    e.dedup();
    build(n, e)
}

/// Degree-preserving random double-edge swaps: `ab, cd → ac, bd`, rejected
/// when that would create a loop or a repeated edge.
pub fn randomize_by_swaps<R: Rng>(g: &Graph, swaps: usize, rng: &mut R) -> Graph {
    let n = g.order();
    let mut adj: Vec<Vec<bool>> = vec![vec![false; n]; n];
    let mut edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u(), e.v())).collect();
    for &(a, b) in &edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    if edges.len() < 2 {
        return g.clone();
    }
    for _ in 0..swaps {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || a == d || b == c || b == d || adj[a][c] || adj[b][d] {
            continue;
        }
        adj[a][b] = false;
        adj[b][a] = false;
        adj[c][d] = false;
        adj[d][c] = false;
        adj[a][c] = true;
        adj[c][a] = true;
        adj[b][d] = true;
        adj[d][b] = true;
        edges[i] = (a.min(c), a.max(c));
        edges[j] = (b.min(d), b.max(d));
    }
    build(n, edges)
}

/// A random `{k, k+1}`-graph of even order `n`, reproducible from `seed`.
///
/// Circulant start, `20m` swaps, then a random matching in the complement on
/// a random vertex subset lifts some degrees to `k + 1`, then `20m` more
/// swaps. Connectivity is not enforced.
pub fn gen_random_semiregular(n: usize, k: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n % 2 == 1 || k == 0 || k >= n {
        return Err(GeneratorError::InfeasibleDegree { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = circulant(n, k);
    let g = randomize_by_swaps(&base, 20 * base.size(), &mut rng);

    let mut chosen: Vec<usize> = (0..n).filter(|_| rng.gen::<bool>()).collect();
    chosen.shuffle(&mut rng);
    let mut used = vec![false; n];
    let mut lift = Vec::new();
    for (i, &v) in chosen.iter().enumerate() {
        if used[v] {
            continue;
        }
        let partners: Vec<usize> = chosen[i + 1..]
            .iter()
            .copied()
            .filter(|&w| !used[w] && !g.has_edge(v, w))
            .collect();
        if let Some(&w) = partners.choose(&mut rng) {
            used[v] = true;
            used[w] = true;
            lift.push(Edge::new(v, w));
        }
    }
    let g = g.with_edges(&lift).expect("lift edges are non-edges");
    let g = randomize_by_swaps(&g, 20 * g.size(), &mut rng);
    debug_assert!(g.is_semiregular(k));
    Ok(g)
}

pub fn gen_named(spec: &GeneratorSpec) -> Result<Graph, GeneratorError> {
    let n = spec.n;
    match spec.family {
        Family::SharpG1 => gen_sharp_g1(n),
        Family::SharpG2 => gen_sharp_g2(n),
        Family::Counterexample => gen_counterexample(n),
        Family::RandomSemiregular => gen_random_semiregular(n, spec.k, spec.seed),
        Family::Complete => Ok(complete(n)),
        Family::Cycle => cycle(n),
        Family::Petersen => Ok(petersen()),
        Family::CompleteBipartite => {
            if n % 2 == 1 {
                return Err(GeneratorError::BadOrder { family: "complete-bipartite", n, reason: "needs even n" });
            }
            Ok(complete_bipartite(n / 2, n / 2))
        }
    }
}
