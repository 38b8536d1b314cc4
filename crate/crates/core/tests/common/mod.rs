//! Planted stuck states.
//!
//! Each fixture fixes a residual graph with a chosen barrier shape, then adds
//! `l` disjoint perfect matchings of its complement to obtain the host. The
//! family is stuck by construction because the residual has no perfect
//! matching.

#![allow(dead_code)]

use pmfactor::graph::{Edge, Graph, VertexSet};
use pmfactor::matching::{perfect_matching_ordered, perfect_matching_within, Matching};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Stuck {
    pub host: Graph,
    pub family: Vec<Matching>,
}

fn range(r: std::ops::Range<usize>) -> VertexSet {
    r.collect()
}

/// Circulant edges on `vs` with the given offsets.
fn circulant_on(vs: &[usize], offsets: &[usize]) -> Vec<(usize, usize)> {
    let k = vs.len();
    let mut out = Vec::new();
    for i in 0..k {
        for &o in offsets {
            let j = (i + o) % k;
            let e = (vs[i].min(vs[j]), vs[i].max(vs[j]));
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

/// `forced` members first, then random perfect matchings of what is left of
/// the complement until there are `l`.
fn plant(residual: Graph, forced: Vec<Matching>, l: usize, seed: u64) -> Stuck {
    let n = residual.order();
    let mut spare = residual.complement();
    for m in &forced {
        assert!(m.is_subgraph_of(&spare), "forced member overlaps the residual");
        spare = spare.without_edges(m.edges());
    }
    let mut family = forced;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    while family.len() < l {
        order.shuffle(&mut rng);
        let m = perfect_matching_ordered(&spare, &order).expect("complement keeps a perfect matching");
        spare = spare.without_edges(m.edges());
        family.push(m);
    }
    let host = residual
        .union_edges(family.iter().flat_map(|m| m.edges().iter()))
        .expect("members avoid the residual");
    Stuck { host, family }
}

/// A member made of `forced` edges plus perfect matchings of `spare` inside
/// each group of still uncovered vertices.
fn member(n: usize, spare: &Graph, forced: &[(usize, usize)], groups: &[VertexSet]) -> Matching {
    let mut edges: Vec<Edge> = forced.iter().map(|&(u, v)| Edge::new(u, v)).collect();
    let used: VertexSet = forced.iter().flat_map(|&(u, v)| [u, v]).collect();
    for g in groups {
        let rest: VertexSet = g.difference(&used).copied().collect();
        let m = perfect_matching_within(spare, &rest).expect("group remainder has a perfect matching");
        edges.extend(m.edges().iter().copied());
    }
    Matching::new(n, edges).expect("disjoint edges")
}

/// Empty barrier: two 10-regular circulants on 17 vertices each; host is
/// 18-regular on 34 vertices with a family of 8.
pub fn stuck_empty(seed: u64) -> Stuck {
    let a: Vec<usize> = (0..17).collect();
    let b: Vec<usize> = (17..34).collect();
    let mut edges = circulant_on(&a, &[1, 2, 3, 4, 5]);
    edges.extend(circulant_on(&b, &[1, 2, 3, 4, 5]));
    plant(Graph::new(34, edges).unwrap(), Vec::new(), 8, seed)
}

/// One barrier vertex `0` joined to three copies of `K_11` by 3, 3 and 4
/// edges; host is a {17,18}-graph with a family of 7.
pub fn stuck_single(seed: u64) -> Stuck {
    let mut edges = Vec::new();
    for t in 0..3 {
        let vs: Vec<usize> = (1 + 11 * t..12 + 11 * t).collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                edges.push((u, v));
            }
        }
        let links = if t == 2 { 4 } else { 3 };
        edges.extend(vs[..links].iter().map(|&v| (0, v)));
    }
    plant(Graph::new(34, edges).unwrap(), Vec::new(), 7, seed)
}

/// Barrier `S = 0..10`, singletons `U = 10..21` adjacent only to `S`, and a
/// 10-regular circulant `C = 21..34` with no residual edge leaving it.
/// `S`–`U` is complete bipartite minus the pairs `(i, 10 + i)`.
fn several_residual() -> Graph {
    let mut edges = Vec::new();
    for s in 0..10 {
        for u in 10..21 {
            if u != 10 + s {
                edges.push((s, u));
            }
        }
    }
    let c: Vec<usize> = (21..34).collect();
    edges.extend(circulant_on(&c, &[1, 2, 3, 4, 5]));
    Graph::new(34, edges).unwrap()
}

/// The first member's number of singleton-to-large edges selects the
/// construction: `None` leaves it random (in practice at least two).
pub fn stuck_several(singleton_crossings: Option<usize>, seed: u64) -> Stuck {
    let h = several_residual();
    let spare = h.complement();
    let (s, u, c) = (range(0..10), range(10..21), range(21..34));
    // Inside C the complement is the cycle i ~ i + 6 (mod 13); removing three
    // consecutive cycle vertices 21, 27, 33 leaves an even path.
    let forced = match singleton_crossings {
        None => Vec::new(),
        Some(0) => vec![member(34, &spare, &[(0, 10), (1, 21), (2, 27), (3, 33)], &[s, u, c])],
        Some(1) => vec![member(34, &spare, &[(11, 21), (0, 27), (1, 33)], &[s, u, c])],
        Some(k) => panic!("no planted member with {k} singleton crossings"),
    };
    plant(h, forced, 8, seed)
}

pub struct SlowStuck {
    pub stuck: Stuck,
    pub first: Matching,
    pub e0: Edge,
}

/// Empty barrier where a supplied rebuilt matching leaves two new
/// components, so the second matching has to be routed through a core.
///
/// `A = 0..11` is `K_11`; `B = A' ∪ core` with `A' = 11..22` (`K_11` minus
/// five pairs, re-added by the first member) and a circulant core `22..n`
/// joined to `A'` by the pairs `(11 + i, core[i])`. The first member pairs
/// `A` with the core, except for the crossing edge `e0`, which goes to `A'`
/// when `e0_into_a1` and to the core otherwise.
///
/// `n = 34` gives a 12-vertex core, `n = 40` an 18-vertex one.
pub fn stuck_empty_slow(n: usize, e0_into_a1: bool, seed: u64) -> SlowStuck {
    let core: Vec<usize> = (22..n).collect();
    let cl = core.len();
    let l = n.div_ceil(4) - 1;
    let loc = |xs: &[usize]| xs.iter().map(|&i| core[i]).collect::<Vec<_>>();
    // Core positions for the ends of the joining pairs, of the member's
    // edges from A, and of e0 / the extra A' edge when e0 avoids A'.
    let (joined, from_a, e0_end, extra_end): (Vec<usize>, Vec<usize>, Option<usize>, Option<usize>) =
        match (cl, e0_into_a1) {
            (12, true) => (loc(&(0..10).collect::<Vec<_>>()), loc(&[1, 2, 3, 4, 5, 7, 8, 9, 10, 11]), None, None),
            (18, true) => (loc(&(0..10).collect::<Vec<_>>()), loc(&[4, 5, 6, 7, 8, 13, 14, 15, 16, 17]), None, None),
            (18, false) => (
                loc(&[0, 1, 2, 4, 5, 6, 7, 8, 9, 10]),
                loc(&[4, 5, 6, 7, 8, 13, 14, 15, 16, 17]),
                Some(core[3]),
                Some(core[12]),
            ),
            _ => panic!("no slow fixture for n = {n}, e0_into_a1 = {e0_into_a1}"),
        };

    let mut edges = Vec::new();
    let a: Vec<usize> = (0..11).collect();
    let a1: Vec<usize> = (11..22).collect();
    let holes: Vec<(usize, usize)> = (0..5).map(|i| (11 + 2 * i, 12 + 2 * i)).collect();
    for set in [&a, &a1] {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if !holes.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
    }
    edges.extend(circulant_on(&core, &[1, 2, 3, 4, 5]));
    let joins: Vec<(usize, usize)> = (0..10).map(|i| (11 + i, joined[i])).collect();
    edges.extend(joins.iter().copied());
    let h = Graph::new(n, edges).unwrap();

    let spare = h.complement();
    let e0 = match e0_end {
        None => Edge::new(0, 21),
        Some(c) => Edge::new(0, c),
    };
    let mut forced: Vec<(usize, usize)> = holes.clone();
    forced.push((e0.u(), e0.v()));
    forced.extend((1..11).map(|i| (i, from_a[i - 1])));
    if let Some(c) = extra_end {
        forced.push((21, c));
    }
    let core_set: VertexSet = core.iter().copied().collect();
    let m0 = member(n, &spare, &forced, std::slice::from_ref(&core_set));

    let f = h.union_edges(m0.edges()).unwrap();
    let mut first: Vec<(usize, usize)> = joins;
    first.push((e0.u(), e0.v()));
    first.extend((0..5).map(|i| (1 + 2 * i, 2 + 2 * i)));
    if let Some(c) = extra_end {
        first.push((21, c));
    }
    let first = member(n, &f, &first, &[core_set]);

    SlowStuck { stuck: plant(h, vec![m0], l, seed), first, e0 }
}

/// Empty barrier whose supplied rebuilt matching leaves a one-vertex barrier,
/// so the construction exchanges the member and finishes in that case.
///
/// The leftover is hub `0` plus three `K_11` blocks `1..12`, `12..23`,
/// `23..34`, with the hub linked to `12..16` and `23..29`. The rebuilt
/// matching sends every vertex of the first block out of it; the member it
/// replaces contains those edges too, so before the exchange the first block
/// is a component on its own.
pub fn stuck_empty_swap(seed: u64) -> SlowStuck {
    let n = 34;
    let mut edges = Vec::new();
    for t in 0..3 {
        let vs: Vec<usize> = (1 + 11 * t..12 + 11 * t).collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    edges.extend((12..16).chain(23..29).map(|v| (0, v)));
    let left = Graph::new(n, edges).unwrap();

    let outward: Vec<(usize, usize)> = (1..12).zip((16..22).chain(23..28)).collect();
    let rest: VertexSet = [0, 12, 13, 14, 15, 22].into_iter().chain(28..34).collect();
    let first = member(n, &left.complement(), &outward, std::slice::from_ref(&rest));
    let m0 = member(n, &left, &outward, &[rest]);
    let f = left.union_edges(first.edges()).unwrap();
    let residual = f.without_edges(m0.edges());
    let e0 = Edge::new(outward[0].0, outward[0].1);
    SlowStuck { stuck: plant(residual, vec![m0], 7, seed), first, e0 }
}
