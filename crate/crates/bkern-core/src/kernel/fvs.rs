//! Boundaried kernelization of Feedback Vertex Set with a forest modulator,
//! on multigraphs with loops and double edges: degree cleanup, loop
//! cleanup, flower rule, and the tree-expansion rule at high-degree
//! boundary vertices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    lift_modulator_into_boundary, shrink_boundary, BoundariedGraph, TargetClass, VertexId,
};
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::{expansion_sets, max_flower, Bipartite};

/// Witness for the tree-expansion rule: hub set X and tree components, each
/// attached to the center by exactly one edge, disjoint from the boundary,
/// and 2-expanding into X.
#[derive(Clone, Debug)]
pub struct GallaiStructure {
    pub center: VertexId,
    pub hub: BTreeSet<VertexId>,
    pub components: Vec<BTreeSet<VertexId>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AppliedRule {
    Flower,
    Gallai,
}

/// Degree rules to a fixed point: non-boundary vertices with at most one
/// edge end vanish, those with exactly two are bypassed (possibly creating a
/// double edge or a loop). Returns the number of applications.
///
/// A bypass between two non-adjacent boundary vertices is NOT collapsed to
/// an edge: an attachment carrying the same boundary edge would be
/// identified with it by gluing and the cycle through the dissolved path
/// would vanish. One degree-2 subdivision witness per boundary pair is kept
/// instead; further parallel paths bypass onto the witness edge and become
/// double edges, which glue faithfully.
pub fn rr_degree_cleanup(g: &mut BoundariedGraph) -> usize {
    let mut applied = 0;
    loop {
        let rest = g.rest();
        let mut reserved: std::collections::BTreeSet<(VertexId, VertexId)> =
            std::collections::BTreeSet::new();
        let mut changed = false;
        for &v in &rest {
            if !g.graph.has_vertex(v) {
                continue;
            }
            let slots = g.graph.degree_slots(v);
            if slots <= 1 {
                g.graph.remove_vertex(v);
                applied += 1;
                changed = true;
            } else if slots == 2 {
                let ends: Vec<VertexId> = g
                    .graph
                    .neighbors(v)
                    .flat_map(|(u, m)| {
                        std::iter::repeat_n(u, if u == v { 2 } else { m as usize })
                    })
                    .collect();
                debug_assert_eq!(ends.len(), 2);
                let (u, w) = (ends[0], ends[1]);
                if u != w
                    && g.boundary.contains(&u)
                    && g.boundary.contains(&w)
                    && g.graph.edge_mult(u, w) == 0
                {
                    let key = (u.min(w), u.max(w));
                    if reserved.insert(key) {
                        continue; // kept as the pair's subdivision witness
                    }
                }
                g.graph.remove_vertex(v);
                if u != v && w != v {
                    g.graph.bump_edge(u, w);
                }
                applied += 1;
                changed = true;
            }
        }
        if !changed {
            return applied;
        }
    }
}

/// A looped boundary vertex is in every solution; its other edges go.
pub fn rr_loop_cleanup(g: &mut BoundariedGraph) -> usize {
    let mut applied = 0;
    let boundary: Vec<VertexId> = g.boundary.iter().copied().collect();
    for x in boundary {
        if !g.graph.has_vertex(x) || !g.graph.has_loop(x) {
            continue;
        }
        let others: Vec<VertexId> = g.graph.open_neighbor_set(x).into_iter().collect();
        if others.is_empty() {
            continue;
        }
        for u in others {
            g.graph.remove_edge(x, u);
        }
        applied += 1;
    }
    applied
}

/// Replace a flower of order above the bound at boundary vertex x by a loop.
/// Refuses (returns false) when the order is within the bound.
pub fn rr_flower(g: &mut BoundariedGraph, x: VertexId, bound: u32) -> Result<bool> {
    if !g.boundary.contains(&x) {
        return Err(Error::precondition(
            "flower rule applies at boundary vertices",
        ));
    }
    if g.graph.has_loop(x) {
        return Err(Error::precondition(
            "looped vertex is handled by loop cleanup",
        ));
    }
    let cert = max_flower(&g.graph, x)?;
    if cert.order <= bound {
        return Ok(false);
    }
    let others: Vec<VertexId> = g.graph.open_neighbor_set(x).into_iter().collect();
    for u in others {
        g.graph.remove_edge(x, u);
    }
    g.graph.set_edge(x, x, 1)?;
    Ok(true)
}

/// Validate the structure's conditions and apply the rule: double edges from
/// the center to the hub, and the single component edges removed.
pub fn rr_gallai(g: &mut BoundariedGraph, s: &GallaiStructure) -> Result<()> {
    validate_gallai(g, s)?;
    for comp in &s.components {
        let attach: Vec<VertexId> = comp
            .iter()
            .copied()
            .filter(|&u| g.graph.has_edge(s.center, u))
            .collect();
        for u in attach {
            g.graph.remove_edge(s.center, u);
        }
    }
    for &v in &s.hub {
        g.graph.set_edge(s.center, v, 2)?;
    }
    Ok(())
}

fn validate_gallai(g: &BoundariedGraph, s: &GallaiStructure) -> Result<()> {
    if s.hub.is_empty() || s.components.is_empty() {
        return Err(Error::precondition("empty tree-expansion structure"));
    }
    if s.hub.contains(&s.center) {
        return Err(Error::precondition("center inside its own hub"));
    }
    let mut removed = s.hub.clone();
    removed.insert(s.center);
    let rest = g.graph.without(&removed);
    let comps = rest.components();
    for comp in &s.components {
        // (i) disjoint from the boundary
        if comp.iter().any(|v| g.boundary.contains(v)) {
            return Err(Error::precondition("component touches the boundary"));
        }
        // must be exactly a component of G - (hub ∪ {center})
        if !comps.contains(comp) {
            return Err(Error::precondition(
                "not a component of G minus hub and center",
            ));
        }
        // (ii) exactly one edge to the center
        let e: u32 = g
            .graph
            .neighbors(s.center)
            .filter(|(u, _)| comp.contains(u))
            .map(|(_, m)| m as u32)
            .sum();
        if e != 1 {
            return Err(Error::precondition(
                "component must have exactly one center edge",
            ));
        }
        // (iii) induces a tree
        if !g.graph.induced(comp).is_tree() {
            return Err(Error::precondition("component is not a tree"));
        }
    }
    // (iv) every Z ⊆ hub has at least 2|Z| adjacent components
    let hub: Vec<VertexId> = s.hub.iter().copied().collect();
    if hub.len() > 20 {
        return Err(Error::precondition("hub too large to validate"));
    }
    for mask in 1u32..(1 << hub.len()) {
        let z: Vec<VertexId> = hub
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        let adjacent = s
            .components
            .iter()
            .filter(|comp| {
                comp.iter()
                    .any(|&u| z.iter().any(|&v| g.graph.has_edge(u, v)))
            })
            .count();
        if adjacent < 2 * z.len() {
            return Err(Error::precondition("2-expansion condition fails"));
        }
    }
    Ok(())
}

/// At a boundary vertex with at least 5·bound distinct non-boundary
/// neighbors (lower rules exhausted), find and apply the flower rule or the
/// tree-expansion rule.
pub fn reduce_high_degree(g: &mut BoundariedGraph, x: VertexId, bound: u32) -> Result<AppliedRule> {
    let rest = g.rest();
    let deg_rest = g.graph.open_neighbor_set(x).intersection(&rest).count() as u32;
    if deg_rest < 5 * bound {
        return Err(Error::precondition(format!(
            "high-degree reduction needs at least {} rest-neighbors, found {deg_rest}",
            5 * bound
        )));
    }
    if rr_flower(g, x, bound)? {
        return Ok(AppliedRule::Flower);
    }
    let cert = max_flower(&g.graph, x)?;
    let mut removed = cert.deletion_set.clone();
    removed.insert(x);
    let comps = g.graph.without(&removed).components();
    let trees: Vec<BTreeSet<VertexId>> = comps
        .into_iter()
        .filter(|comp| {
            let e: u32 = g
                .graph
                .neighbors(x)
                .filter(|(u, _)| comp.contains(u))
                .map(|(_, m)| m as u32)
                .sum();
            e == 1
                && comp.iter().all(|v| !g.boundary.contains(v))
                && g.graph.induced(comp).is_tree()
        })
        .collect();
    let hub: Vec<VertexId> = cert.deletion_set.iter().copied().collect();
    if hub.is_empty() || trees.len() < 2 * hub.len() {
        return Err(Error::precondition(
            "counting argument failed: no applicable structure found",
        ));
    }
    // Bipartite hub-vs-trees graph; components are identified by index.
    let tree_ids: Vec<VertexId> = (0..trees.len() as u32).collect();
    let mut bip = Bipartite::new(hub.clone(), tree_ids);
    for &v in &hub {
        for (ti, comp) in trees.iter().enumerate() {
            if comp.iter().any(|&u| g.graph.has_edge(u, v)) {
                bip.add_edge(v, ti as u32);
            }
        }
    }
    let (hub2, tree_sel) = expansion_sets(&bip)?;
    let structure = GallaiStructure {
        center: x,
        hub: hub2.into_iter().collect(),
        components: tree_sel
            .into_iter()
            .map(|ti| trees[ti as usize].clone())
            .collect(),
    };
    rr_gallai(g, &structure)?;
    Ok(AppliedRule::Gallai)
}

/// Full FVS kernel: lift the modulator and run all rules to a fixed point.
/// Offset stays 0; the output may carry loops and double edges.
pub fn kernelize_fvs_fvs(g: &BoundariedGraph) -> Result<KernelResult> {
    kernelize_fvs_fvs_opts(g, true)
}

pub(crate) fn kernelize_fvs_fvs_opts(
    g: &BoundariedGraph,
    flower_adds_loop: bool,
) -> Result<KernelResult> {
    if g.modulator.is_none() {
        return Err(Error::precondition("fvs kernel requires a modulator"));
    }
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::Forest;
        lift_modulator_into_boundary(&h)?
    };
    if !lifted.graph.without(&lifted.boundary).is_forest() {
        return Err(Error::precondition(
            "fvs kernel requires a forest modulator",
        ));
    }
    let mut work = lifted;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    // Degenerate boundaries run against a virtual bound of 1.
    let bound = (work.boundary.len() as u32).max(1);
    loop {
        trace.bump("fvs-degree", rr_degree_cleanup(&mut work));
        let loops_cleared = rr_loop_cleanup(&mut work);
        trace.bump("fvs-loop", loops_cleared);
        if loops_cleared > 0 {
            continue; // degrees changed; re-run the cleanup rules
        }
        let mut fired = false;
        let boundary: Vec<VertexId> = work.boundary.iter().copied().collect();
        for x in boundary {
            if !work.graph.has_vertex(x) || work.graph.has_loop(x) {
                continue;
            }
            if rr_flower(&mut work, x, bound)? {
                if !flower_adds_loop {
                    work.graph.remove_edge(x, x);
                }
                trace.bump("fvs-flower", 1);
                fired = true;
                break;
            }
        }
        if fired {
            continue;
        }
        let rest = work.rest();
        let high: Option<VertexId> = work
            .boundary
            .iter()
            .copied()
            .filter(|&x| work.graph.has_vertex(x) && !work.graph.has_loop(x))
            .find(|&x| {
                work.graph.open_neighbor_set(x).intersection(&rest).count() as u32 >= 5 * bound
            });
        match high {
            Some(x) => {
                let rule = reduce_high_degree(&mut work, x, bound)?;
                trace.bump(
                    match rule {
                        AppliedRule::Flower => "fvs-flower",
                        AppliedRule::Gallai => "fvs-gallai",
                    },
                    1,
                );
            }
            None => break,
        }
    }
    let lifted_boundary = work.boundary.len();
    let mut reduced = shrink_boundary(&work, &g.boundary)?;
    reduced.modulator = Some(work.boundary.clone());
    reduced.target_class = TargetClass::Forest;
    reduced.td_parents = None;
    let stats = KernelStats {
        lifted_boundary,
        ..stats.finish(&reduced)
    };
    Ok(KernelResult {
        reduced,
        delta: Some(0),
        trace,
        stats,
    })
}
