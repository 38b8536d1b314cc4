//! Barrier with at least two vertices.
//!
//! Here the residual splits into the barrier `S`, a set `U` of `s + 1`
//! isolated vertices, and one large Hamiltonian-connected component `C`.
//! A family member `M` crossing `∂C` at least three times is rebuilt into
//! two matchings: a Hamiltonian path of `C` between two crossing ends covers
//! `C` twice over (once minus each end), the crossing edges themselves come
//! from `M`, and the rest of `S ∪ U` is matched twice inside the bipartite
//! residual between `S` and `U`.

use crate::bipartite::{lemma31_matching, BipartiteGraph, BipartiteMatching};
use crate::graph::{Edge, VertexSet};
use crate::matching::Matching;

use super::augment::{
    assemble, crossing, end_in, path_within, require, AugmentError, Augmentation, AugmentationContext, BarrierCase,
    Claim,
};

/// Residual edges between the barrier and the singletons, indexed by
/// position in `s_list` and `u_list`.
struct Split {
    s_list: Vec<usize>,
    u_list: Vec<usize>,
    bip: BipartiteGraph,
}

impl Split {
    fn s_index(&self, v: usize) -> usize {
        self.s_list.binary_search(&v).expect("barrier vertex")
    }

    fn u_index(&self, v: usize) -> usize {
        self.u_list.binary_search(&v).expect("singleton vertex")
    }

    fn lift(&self, m: &BipartiteMatching) -> impl Iterator<Item = Edge> + '_ {
        m.pairs
            .iter()
            .map(|&(x, y)| Edge::new(self.s_list[x], self.u_list[y]))
            .collect::<Vec<_>>()
            .into_iter()
    }
}

pub(super) fn augment_several(ctx: &AugmentationContext<'_>) -> Result<Augmentation, AugmentError> {
    let n = ctx.n();
    let w = &ctx.witness;
    let s = w.s_len();
    let q = w.q();
    let slack = ctx.slack();
    let l = ctx.l();

    ctx.check(Claim::BarrierSize, s >= slack && slack >= n.div_ceil(4), || {
        format!("s = {s}, D - l = {slack}, ceil(n/4) = {}", n.div_ceil(4))
    })?;
    require(Claim::ComponentCount, q == s + 2, || format!("q = {q}, s = {s}"))?;
    require(Claim::SingletonComponents, w.comps[..q - 1].iter().all(|c| c.len() == 1), || {
        let sizes: Vec<usize> = w.comps.iter().map(|c| c.len()).collect();
        format!("component orders {sizes:?}")
    })?;
    let large = &w.comps[q - 1];
    let cq = large.len();
    ctx.check(
        Claim::LargeComponentOrder,
        cq + 2 * s + 1 == n && 4 * cq >= n + 4 && 2 * cq + 2 <= n,
        || format!("c_q = {cq}, s = {s}, n = {n}"),
    )?;
    let boundary = ctx.residual.edge_boundary(large).expect("in range").len() as i64;
    let bound = s as i64 + l as i64 - ctx.degree as i64;
    let (sub, _) = ctx.residual.induced_subgraph(large).expect("in range");
    ctx.check(Claim::LargeComponentBoundary, boundary <= bound && 2 * sub.min_degree() > cq, || {
        format!(
            "boundary = {boundary} vs s + l - D = {bound}; inner minimum degree {} for order {cq}",
            sub.min_degree()
        )
    })?;
    // Both bipartite steps use budget D - l - 1 at worst.
    require(Claim::LemmaBudget, slack >= 3 && 2 * (slack - 1) >= s + 3, || {
        format!("D - l = {slack}, s = {s}")
    })?;

    let Some(j) = ctx.family.iter().position(|m| {
        m.edges()
            .iter()
            .filter(|e| large.contains(&e.u()) != large.contains(&e.v()))
            .count()
            >= 3
    }) else {
        return Err(super::augment::violated(
            Claim::CrossingMatching,
            "no member crosses the large component's boundary three times".into(),
        ));
    };
    let m0 = &ctx.family[j];

    let singles: VertexSet = w.comps[..q - 1].iter().flatten().copied().collect();
    let barrier = &w.s;
    let split = {
        let s_list: Vec<usize> = barrier.iter().copied().collect();
        let u_list: Vec<usize> = singles.iter().copied().collect();
        let pairs: Vec<(usize, usize)> = s_list
            .iter()
            .enumerate()
            .flat_map(|(x, &sv)| {
                u_list
                    .iter()
                    .enumerate()
                    .filter(move |&(_, &uv)| ctx.residual.has_edge(sv, uv))
                    .map(move |(y, _)| (x, y))
            })
            .collect();
        let bip = BipartiteGraph::new(s_list.len(), u_list.len(), pairs).expect("indices in range");
        Split { s_list, u_list, bip }
    };

    let u_to_c = crossing(m0, &singles, large);
    let s_to_c = crossing(m0, barrier, large);
    let u_to_u = crossing(m0, &singles, &singles);
    let d_hi = slack;
    let d_lo = slack - 1;

    let (first, second, subcase) = match u_to_c.len() {
        0 => {
            require(Claim::CrossingMatching, s_to_c.len() >= 2, || {
                format!("member {j} has {} barrier-to-large edges", s_to_c.len())
            })?;
            require(Claim::SingletonPairs, u_to_u.len() >= 2, || {
                format!("member {j} has {} edges inside the singletons", u_to_u.len())
            })?;
            let (e1, e2) = (s_to_c[0], s_to_c[1]);
            let (p1, p2) = (u_to_u[0], u_to_u[1]);
            let path = path_within(&ctx.residual, large, end_in(&e1, large), end_in(&e2, large))?;
            let a = excluded_pair(&split, &split.bip, d_hi, end_in(&e1, barrier), &p1)?;
            let reduced = split.bip.without_pairs(&a.pairs);
            let b = excluded_pair(&split, &reduced, d_lo, end_in(&e2, barrier), &p2)?;
            let first = assemble(
                n,
                path.matching_without_end(true).into_iter().chain(split.lift(&a)).chain([e1, p1]),
            )?;
            let second = assemble(
                n,
                path.matching_without_end(false).into_iter().chain(split.lift(&b)).chain([e2, p2]),
            )?;
            (first, second, "no-singleton-crossing")
        }
        1 => {
            let e1 = u_to_c[0];
            require(Claim::CrossingMatching, !s_to_c.is_empty(), || {
                format!("member {j} has no barrier-to-large edge")
            })?;
            require(Claim::SingletonPairs, !u_to_u.is_empty(), || {
                format!("member {j} has no edge inside the singletons")
            })?;
            let (e2, p) = (s_to_c[0], u_to_u[0]);
            let path = path_within(&ctx.residual, large, end_in(&e1, large), end_in(&e2, large))?;
            let a = excluded_single(&split, &split.bip, d_hi, end_in(&e1, &singles))?;
            let reduced = split.bip.without_pairs(&a.pairs);
            let b = excluded_pair(&split, &reduced, d_lo, end_in(&e2, barrier), &p)?;
            let first = assemble(
                n,
                path.matching_without_end(true).into_iter().chain(split.lift(&a)).chain([e1]),
            )?;
            let second = assemble(
                n,
                path.matching_without_end(false).into_iter().chain(split.lift(&b)).chain([e2, p]),
            )?;
            (first, second, "one-singleton-crossing")
        }
        _ => {
            let (e1, e2) = (u_to_c[0], u_to_c[1]);
            let path = path_within(&ctx.residual, large, end_in(&e1, large), end_in(&e2, large))?;
            let a = excluded_single(&split, &split.bip, d_hi, end_in(&e1, &singles))?;
            let reduced = split.bip.without_pairs(&a.pairs);
            let b = excluded_single(&split, &reduced, d_lo, end_in(&e2, &singles))?;
            let first = assemble(
                n,
                path.matching_without_end(true).into_iter().chain(split.lift(&a)).chain([e1]),
            )?;
            let second = assemble(
                n,
                path.matching_without_end(false).into_iter().chain(split.lift(&b)).chain([e2]),
            )?;
            (first, second, "many-singleton-crossings")
        }
    };
    check_pair(ctx, j, &first, &second)?;
    Ok(Augmentation {
        replaced: j,
        first,
        second,
        swapped: None,
        barrier: ctx.witness.s_len(),
        components: ctx.witness.q(),
        case: BarrierCase::Several,
        subcase: subcase.into(),
    })
}

/// Matching of the bipartite part avoiding one singleton.
fn excluded_single(
    split: &Split,
    bip: &BipartiteGraph,
    d: usize,
    u: usize,
) -> Result<BipartiteMatching, AugmentError> {
    let u_ex = [split.u_index(u)].into_iter().collect();
    Ok(lemma31_matching(bip, d, 0, &VertexSet::new(), &u_ex)?)
}

/// Matching of the bipartite part avoiding one barrier vertex and both ends
/// of a singleton pair.
fn excluded_pair(
    split: &Split,
    bip: &BipartiteGraph,
    d: usize,
    s: usize,
    pair: &Edge,
) -> Result<BipartiteMatching, AugmentError> {
    let s_ex = [split.s_index(s)].into_iter().collect();
    let u_ex = pair.ends().into_iter().map(|v| split.u_index(v)).collect();
    Ok(lemma31_matching(bip, d, 1, &s_ex, &u_ex)?)
}

/// Both results are perfect, disjoint, and inside `residual ∪ M`.
pub(super) fn check_pair(
    ctx: &AugmentationContext<'_>,
    j: usize,
    a: &Matching,
    b: &Matching,
) -> Result<(), AugmentError> {
    let f = ctx.with_member(j);
    let ok = a.is_perfect() && b.is_perfect() && a.is_subgraph_of(&f) && b.is_subgraph_of(&f) && a.edges().is_disjoint(b.edges());
    if ok {
        Ok(())
    } else {
        Err(AugmentError::Internal(format!(
            "exchange on member {j} produced an invalid pair (sizes {} and {})",
            a.len(),
            b.len()
        )))
    }
}
