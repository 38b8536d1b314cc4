//! Empty barrier: the residual is two odd factor-critical components `A`
//! (smaller) and `B`.
//!
//! A member `M` with at least three `A`–`B` edges is first rebuilt around
//! one crossing edge from the components' own near-perfect matchings. If the
//! graph left over has a perfect matching we are done. Otherwise the leftover
//! splits into two new components `A'` ⊂ `B` and `B'`, and a second
//! rebuilt matching is routed through the shared core `B ∩ B'`. Whenever
//! a leftover graph has a nonempty barrier instead, the rebuilt matching
//! replaces `M` and the nonempty-barrier construction finishes the job.

use crate::graph::{Edge, VertexSet};
use crate::hamilton::even_cycle_matchings;
use crate::matching::{berge_witness, is_bicritical, perfect_matching, perfect_matching_within, Matching};

use super::augment::{
    assemble, augment_nonempty, crossing, cycle_within, end_in, require, violated, AugmentError, Augmentation,
    AugmentationContext, BarrierCase, Claim,
};

pub(super) fn augment_empty(ctx: &AugmentationContext<'_>) -> Result<Augmentation, AugmentError> {
    let w = &ctx.witness;
    let q = w.q();
    require(Claim::ComponentCount, q == 2, || format!("q = {q} with an empty barrier"))?;
    let floor = ctx.slack() + 1;
    ctx.check(Claim::ComponentOrder, w.comps.iter().all(|c| c.len() >= floor), || {
        format!("component orders {} and {} below D - l + 1 = {floor}", w.comps[0].len(), w.comps[1].len())
    })?;
    let (a, b) = (&w.comps[0], &w.comps[1]);
    let counts: Vec<usize> = ctx.family.iter().map(|m| crossing(m, a, b).len()).collect();
    ctx.check(Claim::OddCrossing, counts.iter().all(|c| c % 2 == 1), || {
        format!("crossing counts {counts:?} are not all odd")
    })?;

    let mut last = None;
    for (j, _) in counts.iter().enumerate().filter(|&(_, &c)| c >= 3) {
        for e0 in crossing(&ctx.family[j], a, b) {
            let near_a = &w.certs[0][&end_in(&e0, a)];
            let near_b = &w.certs[1][&end_in(&e0, b)];
            let rebuilt = assemble(
                ctx.n(),
                near_a.edges().iter().chain(near_b.edges()).copied().chain([e0]),
            )?;
            match second_stage(ctx, j, e0, &rebuilt) {
                Ok(aug) => return Ok(aug),
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.unwrap_or_else(|| {
        violated(Claim::OddCrossing, format!("no member has three crossing edges; counts {counts:?}"))
    }))
}

/// Continues from a given rebuilt matching `first` of `residual ∪ M_j`
/// containing the crossing edge `e0`.
pub fn second_stage(
    ctx: &AugmentationContext<'_>,
    j: usize,
    e0: Edge,
    first: &Matching,
) -> Result<Augmentation, AugmentError> {
    let n = ctx.n();
    let quarter = n.div_ceil(4);
    let w = &ctx.witness;
    let (a, b) = (&w.comps[0], &w.comps[1]);
    let m0 = &ctx.family[j];
    let f = ctx.with_member(j);
    if !first.is_perfect() || !first.is_subgraph_of(&f) || !first.contains(&e0) {
        return Err(AugmentError::PreconditionViolated(
            "rebuilt matching must be a perfect matching of residual + member containing the crossing edge".into(),
        ));
    }
    let done = |first: Matching, second: Matching, subcase: &str| Augmentation {
        replaced: j,
        first,
        second,
        swapped: None,
        barrier: ctx.witness.s_len(),
        components: ctx.witness.q(),
        case: BarrierCase::Empty,
        subcase: subcase.into(),
    };

    let left = f.without_edges(first.edges());
    if let Some(second) = perfect_matching(&left) {
        return Ok(done(first.clone(), second, "direct"));
    }
    let w1 = berge_witness(&left).map_err(|e| AugmentError::Internal(e.to_string()))?;
    if w1.s_len() > 0 {
        return exchange_then_recurse(ctx, j, first, "after-first");
    }
    require(Claim::ComponentCount, w1.q() == 2, || format!("leftover has {} components", w1.q()))?;
    let (mut a1, mut b1) = (&w1.comps[0], &w1.comps[1]);
    if a1.len() == b1.len() && !a1.is_subset(b) {
        std::mem::swap(&mut a1, &mut b1);
    }
    ctx.check(Claim::SplitShape, a1.len() > quarter, || {
        format!("leftover components of orders {} and {}", a1.len(), b1.len())
    })?;
    require(Claim::Nesting, a1.is_subset(b), || "smaller leftover component meets the smaller residual component".into())?;
    let core: VertexSet = b.intersection(b1).copied().collect();
    require(Claim::Nesting, !core.is_empty(), || "shared core is empty".into())?;

    // Two disjoint edges leaving the core: one from M (not e0) towards A,
    // one residual edge towards A'.
    let to_a: Vec<Edge> = crossing(m0, a, &core).into_iter().filter(|&e| e != e0).collect();
    let to_a1: Vec<Edge> = ctx.residual.edges_between(a1, &core).expect("in range").into_iter().collect();
    let pair = to_a
        .iter()
        .find_map(|e| to_a1.iter().find(|g| !e.touches(g)).map(|g| (*e, *g)));
    let Some((e1, g1)) = pair else {
        return Err(violated(
            Claim::DisjointPair,
            format!("{} member edges to A and {} residual edges to A' have no disjoint pair", to_a.len(), to_a1.len()),
        ));
    };
    let inside_a1 = |v: usize| -> Result<Matching, AugmentError> {
        let mut rest = a1.clone();
        rest.remove(&v);
        perfect_matching_within(&left, &rest)
            .ok_or_else(|| violated(Claim::SplitShape, "leftover component is not factor-critical".into()))
    };
    let near_a = |v: usize| &w.certs[0][&v];
    let a1_near = inside_a1(end_in(&g1, a1))?;

    let (second, branch) = if 2 * core.len() + 4 < n {
        let mut rest = core.clone();
        rest.remove(&end_in(&e1, &core));
        rest.remove(&end_in(&g1, &core));
        if ctx.claims.is_enabled(Claim::CoreDirac) {
            let (sub, _) = ctx.residual.induced_subgraph(&core).expect("in range");
            ctx.check(Claim::CoreDirac, is_bicritical(&sub), || "shared core is not bi-critical".into())?;
        }
        let inner = perfect_matching_within(&ctx.residual, &rest)
            .ok_or_else(|| violated(Claim::SecondMatching, "core minus two vertices has no perfect matching".into()))?;
        let m = assemble(
            n,
            near_a(end_in(&e1, a))
                .edges()
                .iter()
                .chain(a1_near.edges())
                .chain(inner.edges())
                .copied()
                .chain([e1, g1]),
        )?;
        (m, "bicritical-core")
    } else {
        let cycle = cycle_within(&ctx.residual, &core)
            .map_err(|e| violated(Claim::CoreDirac, format!("shared core has no Hamiltonian cycle: {e}")))?;
        if let Some(&e2) = crossing(m0, a, a1).first() {
            let (half, _) = even_cycle_matchings(&cycle, n)?;
            let m = assemble(
                n,
                near_a(end_in(&e2, a))
                    .edges()
                    .iter()
                    .chain(inside_a1(end_in(&e2, a1))?.edges())
                    .chain(half.edges())
                    .copied()
                    .chain([e2]),
            )?;
            (m, "cross-edge")
        } else {
            let order = cycle.order();
            let len = order.len();
            let pos = |v: usize| order.iter().position(|&x| x == v).expect("core vertex on cycle");
            let px = pos(end_in(&g1, &core));
            let e3 = crossing(m0, a, &core)
                .into_iter()
                .find(|e| ((pos(end_in(e, &core)) + len - px) % len) % 2 == 1)
                .ok_or_else(|| violated(Claim::SecondMatching, "no member edge at odd distance on the core cycle".into()))?;
            let py = pos(end_in(&e3, &core));
            let arc = |from: usize, to: usize| -> Vec<Edge> {
                let mut vs = Vec::new();
                let mut i = (from + 1) % len;
                while i != to {
                    vs.push(order[i]);
                    i = (i + 1) % len;
                }
                vs.chunks(2).map(|p| Edge::new(p[0], p[1])).collect()
            };
            let m = assemble(
                n,
                near_a(end_in(&e3, a))
                    .edges()
                    .iter()
                    .chain(a1_near.edges())
                    .copied()
                    .chain(arc(px, py))
                    .chain(arc(py, px))
                    .chain([e3, g1]),
            )?;
            (m, "split-cycle")
        }
    };
    if !second.is_perfect() || !second.is_subgraph_of(&f) {
        return Err(AugmentError::Internal(format!("{branch} matching is not a perfect matching of residual + member")));
    }
    let keeps_old = crossing(m0, a, b).iter().any(|e| !second.contains(e));
    let keeps_new = crossing(first, a1, b1).iter().any(|e| !second.contains(e));
    ctx.check(Claim::SecondMatching, keeps_old && keeps_new, || {
        format!("{branch} matching absorbs every crossing edge (old kept: {keeps_old}, new kept: {keeps_new})")
    })?;

    let left2 = f.without_edges(second.edges());
    if let Some(third) = perfect_matching(&left2) {
        return Ok(done(second, third, branch));
    }
    let w2 = berge_witness(&left2).map_err(|e| AugmentError::Internal(e.to_string()))?;
    if w2.s_len() > 0 {
        return exchange_then_recurse(ctx, j, &second, branch);
    }
    Err(violated(
        Claim::FinalContradiction,
        format!("leftover after the {branch} matching is two components of orders {} and {}", w2.comps[0].len(), w2.comps[1].len()),
    ))
}

/// Replaces member `j` by `replacement` (same family size, still stuck) and
/// runs the nonempty-barrier construction on the new residual.
fn exchange_then_recurse(
    ctx: &AugmentationContext<'_>,
    j: usize,
    replacement: &Matching,
    tag: &str,
) -> Result<Augmentation, AugmentError> {
    let mut family = ctx.family.clone();
    family[j] = replacement.clone();
    let inner = AugmentationContext::new(ctx.host, family, ctx.claims)?;
    if inner.case == BarrierCase::Empty {
        return Err(AugmentError::Internal("exchange left an empty barrier".into()));
    }
    let mut aug = augment_nonempty(&inner)?;
    aug.subcase = format!("{tag}+{}:{}", inner.case, aug.subcase);
    aug.case = BarrierCase::Empty;
    aug.swapped = Some((j, replacement.clone()));
    aug.barrier = ctx.witness.s_len();
    aug.components = ctx.witness.q();
    Ok(aug)
}
