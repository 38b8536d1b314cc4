//! Barrier of one vertex `v`.
//!
//! The residual minus `v` has three Hamiltonian-connected components. Two of
//! them, joined by two edges of some family member, close into one even
//! cycle; the third closes into another through `v`. The alternating
//! classes of the two cycles give the two new matchings.

use crate::graph::VertexSet;
use crate::hamilton::{even_cycle_matchings, VertexCycle};

use super::augment::{
    assemble, crossing, end_in, path_within, require, violated, AugmentError, Augmentation, AugmentationContext,
    BarrierCase, Claim,
};
use super::case_many::check_pair;

pub(super) fn augment_single(ctx: &AugmentationContext<'_>) -> Result<Augmentation, AugmentError> {
    let n = ctx.n();
    let w = &ctx.witness;
    let q = w.q();
    let slack = ctx.slack();
    let quarter = n.div_ceil(4);
    require(Claim::ComponentCount, q == 3, || format!("q = {q} with one barrier vertex"))?;
    let floor = slack;
    ctx.check(Claim::ComponentOrder, w.comps.iter().all(|c| c.len() >= floor), || {
        let sizes: Vec<usize> = w.comps.iter().map(|c| c.len()).collect();
        format!("component orders {sizes:?} below D - l = {floor}")
    })?;

    let hub = *w.s.iter().next().expect("one barrier vertex");
    let hub_set: VertexSet = [hub].into_iter().collect();
    let links: Vec<usize> = w
        .comps
        .iter()
        .map(|c| ctx.residual.edges_between(&hub_set, c).expect("in range").len())
        .collect();
    let far = (0..3).fold(0, |best, i| if links[i] > links[best] { i } else { best });
    let (t1, t2, t3) = {
        let rest: Vec<&VertexSet> = (0..3).filter(|&i| i != far).map(|i| &w.comps[i]).collect();
        (rest[0], rest[1], &w.comps[far])
    };
    ctx.check(
        Claim::HubComponentOrder,
        [t1, t2].iter().all(|t| t.len() > quarter && 2 * t.len() + 6 <= n) && t3.len() >= quarter && 2 * t3.len() + 6 <= n,
        || format!("orders {}, {}, {} for n = {n}", t1.len(), t2.len(), t3.len()),
    )?;

    let Some(j) = ctx.family.iter().position(|m| crossing(m, t1, t2).len() >= 2) else {
        return Err(violated(
            Claim::TwoCrossingEdges,
            "every member has at most one edge between the two smaller hub components".into(),
        ));
    };
    let cross = crossing(&ctx.family[j], t1, t2);
    let (e1, e2) = (cross[0], cross[1]);

    let hc = |r: Result<_, _>| {
        r.map_err(|e| violated(Claim::HubComponentOrder, format!("component is not Hamiltonian-connected: {e}")))
    };
    let p1 = hc(path_within(&ctx.residual, t1, end_in(&e1, t1), end_in(&e2, t1)))?;
    let p2 = hc(path_within(&ctx.residual, t2, end_in(&e2, t2), end_in(&e1, t2)))?;
    let outer = VertexCycle::new(p1.order().iter().chain(p2.order()).copied().collect());

    let nbrs: Vec<usize> = ctx.residual.neighbors(hub).iter().copied().filter(|v| t3.contains(v)).collect();
    require(Claim::HubNeighbors, nbrs.len() >= 2, || {
        format!("barrier vertex has {} neighbors in the third component", nbrs.len())
    })?;
    let p3 = hc(path_within(&ctx.residual, t3, nbrs[0], nbrs[1]))?;
    let inner = VertexCycle::new(std::iter::once(hub).chain(p3.order().iter().copied()).collect());

    let (oa, ob) = even_cycle_matchings(&outer, n)?;
    let (ia, ib) = even_cycle_matchings(&inner, n)?;
    let first = assemble(n, oa.edges().iter().chain(ia.edges()).copied())?;
    let second = assemble(n, ob.edges().iter().chain(ib.edges()).copied())?;
    check_pair(ctx, j, &first, &second)?;
    Ok(Augmentation {
        replaced: j,
        first,
        second,
        swapped: None,
        barrier: ctx.witness.s_len(),
        components: ctx.witness.q(),
        case: BarrierCase::Single,
        subcase: "two-cycles".into(),
    })
}
