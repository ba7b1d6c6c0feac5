//! Boundaried kernels for Long Cycle, Long Path, and Hamiltonian Cycle/Path
//! under a vertex-cover modulator, plus the degree-2 contraction front end
//! for the Hamiltonicity problems.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    lift_modulator_into_boundary, shrink_boundary, BoundariedGraph, Graph, TargetClass, VertexId,
};
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::{max_matching, Bipartite};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HamVariant {
    Cycle,
    Path,
}

/// Pack an unordered boundary pair into one id for the auxiliary bipartite
/// graphs.
fn pair_id(i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (i * 10_000 + j) as u32
}

/// Matched non-boundary survivors of the Long Cycle auxiliary graph, plus
/// the fixed 4-cycle witness K (two rest vertices).
pub fn lc_survivors(g: &BoundariedGraph) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let bs: Vec<VertexId> = g.boundary.iter().copied().collect();
    let rest: Vec<VertexId> = g.rest().into_iter().collect();
    let mut pair_ids = Vec::new();
    for i in 0..bs.len() {
        for j in (i + 1)..bs.len() {
            pair_ids.push(pair_id(i, j));
        }
    }
    let mut aux = Bipartite::new(rest.clone(), pair_ids);
    for &v in &rest {
        for i in 0..bs.len() {
            for j in (i + 1)..bs.len() {
                if g.graph.has_edge(v, bs[i]) && g.graph.has_edge(v, bs[j]) {
                    aux.add_edge(v, pair_id(i, j));
                }
            }
        }
    }
    let matched = max_matching(&aux).matched_left();

    // Fix one 4-cycle with exactly two rest vertices, if present.
    let mut k = BTreeSet::new();
    'outer: for (vi, &v) in rest.iter().enumerate() {
        for &w in &rest[vi + 1..] {
            for i in 0..bs.len() {
                for j in (i + 1)..bs.len() {
                    if g.graph.has_edge(v, bs[i])
                        && g.graph.has_edge(v, bs[j])
                        && g.graph.has_edge(w, bs[i])
                        && g.graph.has_edge(w, bs[j])
                    {
                        k.insert(v);
                        k.insert(w);
                        break 'outer;
                    }
                }
            }
        }
    }
    (matched, k)
}

/// Matched non-boundary survivors of the Long Path auxiliary graph, where
/// rest vertices may also match single boundary vertices (path endpoints).
/// Each boundary vertex carries two endpoint slots: one path can start and
/// another end at the same neighbor.
pub fn lp_survivors(g: &BoundariedGraph) -> BTreeSet<VertexId> {
    let bs: Vec<VertexId> = g.boundary.iter().copied().collect();
    let rest: Vec<VertexId> = g.rest().into_iter().collect();
    let single_base = 100_000_000u32;
    let mut right = Vec::new();
    for i in 0..bs.len() {
        right.push(single_base + 2 * i as u32);
        right.push(single_base + 2 * i as u32 + 1);
        for j in (i + 1)..bs.len() {
            right.push(pair_id(i, j));
        }
    }
    right.sort_unstable();
    let mut aux = Bipartite::new(rest.clone(), right);
    for &v in &rest {
        for i in 0..bs.len() {
            if g.graph.has_edge(v, bs[i]) {
                aux.add_edge(v, single_base + 2 * i as u32);
                aux.add_edge(v, single_base + 2 * i as u32 + 1);
            }
            for j in (i + 1)..bs.len() {
                if g.graph.has_edge(v, bs[i]) && g.graph.has_edge(v, bs[j]) {
                    aux.add_edge(v, pair_id(i, j));
                }
            }
        }
    }
    max_matching(&aux).matched_left()
}

fn require_vc_instance(g: &BoundariedGraph, what: &str) -> Result<BoundariedGraph> {
    if g.modulator.is_none() {
        return Err(Error::precondition(format!(
            "{what} kernel requires a modulator"
        )));
    }
    if !g.graph.is_simple() {
        return Err(Error::precondition(format!(
            "{what} kernel requires a simple graph"
        )));
    }
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::VertexCover;
        lift_modulator_into_boundary(&h)?
    };
    if !lifted.graph.without(&lifted.boundary).is_independent() {
        return Err(Error::precondition(format!(
            "{what} kernel requires a vertex-cover modulator"
        )));
    }
    Ok(lifted)
}

/// Long Cycle kernel: keep matched rest vertices plus the fixed 4-cycle
/// witness, delete the rest. Offset 0.
pub fn kernelize_lc_vc(g: &BoundariedGraph) -> Result<KernelResult> {
    kernelize_lc_vc_opts(g, true)
}

pub(crate) fn kernelize_lc_vc_opts(g: &BoundariedGraph, keep_k: bool) -> Result<KernelResult> {
    let mut work = require_vc_instance(g, "long cycle")?;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let (matched, k) = lc_survivors(&work);
    let mut keep = matched;
    if keep_k {
        keep.extend(k.iter().copied());
    }
    let doomed: Vec<VertexId> = work
        .rest()
        .into_iter()
        .filter(|v| !keep.contains(v))
        .collect();
    trace.bump("lc-prune", doomed.len());
    work.graph.remove_vertices(&doomed);
    finish_path_kernel(g, work, stats, trace)
}

/// Long Path kernel: keep matched rest vertices, delete the rest. Offset 0.
/// When the boundary is empty and deletion would empty a nonempty graph, a
/// single isolated vertex is kept so the zero-length path survives.
pub fn kernelize_lp_vc(g: &BoundariedGraph) -> Result<KernelResult> {
    let mut work = require_vc_instance(g, "long path")?;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let keep = lp_survivors(&work);
    let mut doomed: Vec<VertexId> = work
        .rest()
        .into_iter()
        .filter(|v| !keep.contains(v))
        .collect();
    if work.boundary.is_empty()
        && work.graph.num_vertices() > 0
        && doomed.len() == work.graph.num_vertices()
    {
        doomed.remove(0);
    }
    trace.bump("lp-prune", doomed.len());
    work.graph.remove_vertices(&doomed);
    finish_path_kernel(g, work, stats, trace)
}

fn finish_path_kernel(
    g: &BoundariedGraph,
    work: BoundariedGraph,
    stats: KernelStats,
    trace: Trace,
) -> Result<KernelResult> {
    let lifted_boundary = work.boundary.len();
    let mut reduced = shrink_boundary(&work, &g.boundary)?;
    reduced.modulator = Some(work.boundary.clone());
    reduced.target_class = TargetClass::VertexCover;
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

/// The always-NO replacement: the original boundary as an independent set
/// plus two fresh isolated non-boundary vertices. Any gluing of it is
/// disconnected, so it has no Hamiltonian cycle or path.
fn no_gadget(g: &BoundariedGraph) -> BoundariedGraph {
    let mut out = Graph::new();
    for &b in &g.boundary {
        out.add_vertex(b);
    }
    let fresh = g
        .graph
        .fresh_id()
        .max(g.boundary.iter().next_back().map_or(0, |m| m + 1));
    out.add_vertex(fresh);
    out.add_vertex(fresh + 1);
    let mut bg = BoundariedGraph::new(out, g.boundary.clone());
    bg.modulator = Some(bg.graph.vertex_set().clone());
    bg.target_class = TargetClass::VertexCover;
    bg
}

/// Hamiltonian Cycle/Path kernel under a vertex-cover modulator: small
/// instances pass through unchanged; larger ones are always NO and are
/// replaced by the canonical gadget. Decision problem, so no offset.
pub fn kernelize_hc_hp_vc(g: &BoundariedGraph, which: HamVariant) -> Result<KernelResult> {
    kernelize_hc_hp_vc_opts(g, which, false)
}

pub(crate) fn kernelize_hc_hp_vc_opts(
    g: &BoundariedGraph,
    _which: HamVariant,
    always_gadget: bool,
) -> Result<KernelResult> {
    let work = require_vc_instance(g, "hamiltonian")?;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let lifted_boundary = work.boundary.len();
    let reduced = if !always_gadget && work.graph.num_vertices() <= 2 * lifted_boundary + 1 {
        let mut r = shrink_boundary(&work, &g.boundary)?;
        r.modulator = Some(work.boundary.clone());
        r.target_class = TargetClass::VertexCover;
        r.td_parents = None;
        r
    } else {
        trace.bump("ham-no-gadget", 1);
        no_gadget(g)
    };
    let stats = KernelStats {
        lifted_boundary,
        ..stats.finish(&reduced)
    };
    Ok(KernelResult {
        reduced,
        delta: None,
        trace,
        stats,
    })
}

/// Hamiltonian Cycle/Path parameterized by the number of degree != 2
/// vertices: contract runs of degree-2 vertices outside boundary and
/// modulator, special-case cycle and triangle leftovers, then delegate to
/// the vertex-cover kernel.
pub fn kernelize_hc_hp_deg2(g: &BoundariedGraph, which: HamVariant) -> Result<KernelResult> {
    let Some(modulator) = g.modulator.clone() else {
        return Err(Error::precondition("deg2 kernel requires a modulator"));
    };
    if !g.graph.is_simple() {
        return Err(Error::precondition("deg2 kernel requires a simple graph"));
    }
    for v in g.graph.vertices() {
        if g.graph.degree(v) != 2 && !modulator.contains(&v) && !g.boundary.contains(&v) {
            return Err(Error::precondition(format!(
                "vertex {v} has degree != 2 but is outside boundary and modulator"
            )));
        }
    }
    let mut work = g.clone();
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let mut cover: BTreeSet<VertexId> = g.boundary.union(&modulator).copied().collect();

    // Contract adjacent degree-2 pairs outside boundary ∪ modulator whenever
    // the contraction does not collapse a parallel edge (no common
    // neighbor). This shrinks paths to single vertices and chordless cycles
    // to triangles.
    loop {
        let free: Vec<VertexId> = work
            .graph
            .vertices()
            .filter(|v| !cover.contains(v) && !work.boundary.contains(v))
            .collect();
        let mut contracted = false;
        'scan: for &u in &free {
            if work.graph.degree(u) != 2 {
                continue;
            }
            for v in work.graph.open_neighbor_set(u) {
                if v <= u || cover.contains(&v) || work.boundary.contains(&v) {
                    continue;
                }
                if work.graph.degree(v) != 2 {
                    continue;
                }
                let nu = work.graph.open_neighbor_set(u);
                let nv = work.graph.open_neighbor_set(v);
                if nu.intersection(&nv).next().is_some() {
                    continue; // would collapse a parallel edge
                }
                // keep u (the smaller id), inherit v's other neighbor
                let other = nv.into_iter().find(|&w| w != u).expect("degree 2");
                work.graph.remove_vertex(v);
                work.graph.ensure_edge(u, other);
                trace.bump("deg2-contract", 1);
                contracted = true;
                break 'scan;
            }
        }
        if !contracted {
            break;
        }
    }

    // Classify leftover adjacencies among free vertices: each lies in a
    // triangle, either pure (all three free) or hanging off one cover
    // vertex.
    let free: BTreeSet<VertexId> = work
        .graph
        .vertices()
        .filter(|v| !cover.contains(v) && !work.boundary.contains(v))
        .collect();
    let mut pure_triangles: Vec<BTreeSet<VertexId>> = Vec::new();
    let mut hanging: Vec<(VertexId, VertexId, VertexId)> = Vec::new(); // (z, u, v)
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for &u in &free {
        if seen.contains(&u) {
            continue;
        }
        for v in work.graph.open_neighbor_set(u) {
            if v <= u || !free.contains(&v) || seen.contains(&v) {
                continue;
            }
            let nu = work.graph.open_neighbor_set(u);
            let nv = work.graph.open_neighbor_set(v);
            let common: Vec<VertexId> = nu.intersection(&nv).copied().collect();
            let z = *common
                .first()
                .expect("non-contractible pair shares a neighbor");
            if free.contains(&z) {
                pure_triangles.push([u, v, z].into_iter().collect());
                seen.extend([u, v, z]);
            } else {
                hanging.push((z, u, v));
                seen.extend([u, v]);
            }
        }
    }

    let whole_graph_is_one_triangle =
        |t: &BTreeSet<VertexId>| work.graph.num_vertices() == 3 && work.graph.vertex_set() == t;

    if let [t] = pure_triangles.as_slice() {
        if whole_graph_is_one_triangle(t) && work.boundary.is_empty() {
            // A lone chordless cycle: keep its triangle form verbatim.
            let mut reduced = work.clone();
            reduced.modulator = Some(modulator);
            let stats = stats.finish(&reduced);
            return Ok(KernelResult {
                reduced,
                delta: None,
                trace,
                stats,
            });
        }
    }
    if !pure_triangles.is_empty() {
        // A boundary-free cycle component next to anything else keeps every
        // gluing disconnected: always NO.
        trace.bump("ham-no-gadget", 1);
        let reduced = no_gadget(g);
        let stats = stats.finish(&reduced);
        return Ok(KernelResult {
            reduced,
            delta: None,
            trace,
            stats,
        });
    }

    if !hanging.is_empty() {
        let graph_is_exactly_triangle = hanging.len() == 1 && {
            let (z, u, v) = hanging[0];
            let t: BTreeSet<VertexId> = [z, u, v].into_iter().collect();
            work.graph.vertex_set() == &t
        };
        if graph_is_exactly_triangle {
            // Nothing but one triangle hanging off a cover vertex: small
            // enough to pass through verbatim.
            let mut reduced = work.clone();
            reduced.modulator = Some(modulator);
            let stats = stats.finish(&reduced);
            return Ok(KernelResult {
                reduced,
                delta: None,
                trace,
                stats,
            });
        }
        match which {
            HamVariant::Cycle => {
                // A hanging triangle admits no Hamiltonian cycle unless the
                // graph is exactly that triangle.
                trace.bump("ham-no-gadget", 1);
                let reduced = no_gadget(g);
                let stats = stats.finish(&reduced);
                return Ok(KernelResult {
                    reduced,
                    delta: None,
                    trace,
                    stats,
                });
            }
            HamVariant::Path => {
                // Each hanging triangle pins one path end; more than two
                // make the answer NO. Otherwise open the triangle into a
                // pendant path, which forces the same traversals.
                if hanging.len() > 2 {
                    trace.bump("ham-no-gadget", 1);
                    let reduced = no_gadget(g);
                    let stats = stats.finish(&reduced);
                    return Ok(KernelResult {
                        reduced,
                        delta: None,
                        trace,
                        stats,
                    });
                }
                for &(z, _u, v) in &hanging {
                    work.graph.remove_edge(z, v);
                    cover.insert(v);
                    trace.bump("deg2-open-triangle", 1);
                }
            }
        }
    }

    // Now boundary ∪ cover is a vertex cover of the contracted graph.
    let mut delegated = work.clone();
    delegated.modulator = Some(
        cover
            .iter()
            .copied()
            .filter(|v| delegated.graph.has_vertex(*v))
            .collect(),
    );
    delegated.target_class = TargetClass::VertexCover;
    let mut res = kernelize_hc_hp_vc(&delegated, which)?;
    res.trace.merge(&trace);
    res.stats.n_before = stats.n_before;
    res.stats.m_before = stats.m_before;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{opt_exact, OptValue, OracleLimits, Problem};
    use crate::{glue, BoundariedGraph};

    fn bset(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    fn vc_instance(g: Graph, boundary: &[u32], modulator: &[u32]) -> BoundariedGraph {
        BoundariedGraph::new(g, bset(boundary))
            .with_modulator(bset(modulator), TargetClass::VertexCover)
    }

    fn empty_attachment(boundary: &BTreeSet<u32>) -> BoundariedGraph {
        let mut g = Graph::new();
        for &b in boundary {
            g.add_vertex(b);
        }
        BoundariedGraph::new(g, boundary.clone())
    }

    #[test]
    fn lc_deletes_rest_vertices_without_two_boundary_neighbors() {
        // boundary {0,1}; vertex 2 adjacent to both, vertex 3 to one only.
        let mut g = Graph::with_vertices(4);
        g.bump_edge(2, 0);
        g.bump_edge(2, 1);
        g.bump_edge(3, 0);
        let bg = vc_instance(g, &[0, 1], &[]);
        let res = kernelize_lc_vc(&bg).unwrap();
        assert!(res.reduced.graph.has_vertex(2));
        assert!(!res.reduced.graph.has_vertex(3));
    }

    #[test]
    fn lc_keeps_the_four_cycle_witness() {
        // C4 on boundary {0,1} with rest {2,3}, plus twins 4,5 of them.
        let mut g = Graph::with_vertices(6);
        for v in [2u32, 3, 4, 5] {
            g.bump_edge(v, 0);
            g.bump_edge(v, 1);
        }
        let bg = vc_instance(g.clone(), &[0, 1], &[]);
        let res = kernelize_lc_vc(&bg).unwrap();
        // only one pair {0,1} exists, so one vertex is matched; K adds two.
        let rest: Vec<u32> = res.reduced.rest().into_iter().collect();
        assert!(rest.len() <= 3);
        // Long-cycle value is preserved under the empty attachment.
        let lim = OracleLimits::default();
        let before = opt_exact(Problem::Lc, &g, &lim).unwrap();
        let after = opt_exact(Problem::Lc, &res.reduced.graph, &lim).unwrap();
        assert_eq!(before, after);
        assert_eq!(before, OptValue::Finite(4));
    }

    #[test]
    fn lc_size_bound() {
        let mut g = Graph::with_vertices(10);
        for v in 3..10u32 {
            g.bump_edge(v, 0);
            g.bump_edge(v, 1);
            g.bump_edge(v, 2);
        }
        let bg = vc_instance(g, &[0, 1, 2], &[]);
        let res = kernelize_lc_vc(&bg).unwrap();
        let b = res.stats.lifted_boundary;
        assert!(res.reduced.rest().len() <= b * b + 2);
    }

    #[test]
    fn lp_isolated_rest_vertex_deleted() {
        let mut g = Graph::with_vertices(3);
        g.bump_edge(1, 0);
        let bg = vc_instance(g, &[0], &[]);
        let res = kernelize_lp_vc(&bg).unwrap();
        assert!(!res.reduced.graph.has_vertex(2));
        assert!(res.reduced.graph.has_vertex(1));
    }

    #[test]
    fn lp_pendant_twins_fill_both_endpoint_slots() {
        // Both twins survive: a path may start and end at neighbors of the
        // same boundary vertex (1-0-2 here), so dropping one would lose it.
        let mut g = Graph::with_vertices(4);
        g.bump_edge(1, 0);
        g.bump_edge(2, 0);
        g.bump_edge(3, 0);
        let bg = vc_instance(g.clone(), &[0], &[]);
        let res = kernelize_lp_vc(&bg).unwrap();
        assert_eq!(res.reduced.rest().len(), 2);
        let lim = OracleLimits::default();
        assert_eq!(
            opt_exact(Problem::Lp, &g, &lim).unwrap(),
            opt_exact(Problem::Lp, &res.reduced.graph, &lim).unwrap()
        );
        // still within the stated bound
        let b = res.stats.lifted_boundary;
        assert!(res.reduced.rest().len() <= b * b + b);
    }

    #[test]
    fn lp_empty_boundary_keeps_a_zero_length_path() {
        let g = Graph::with_vertices(1);
        let bg = vc_instance(g, &[], &[]);
        let res = kernelize_lp_vc(&bg).unwrap();
        assert_eq!(res.reduced.graph.num_vertices(), 1);
    }

    #[test]
    fn hc_threshold_and_gadget() {
        // |B'| = 2: 6 vertices exceed 2*2+1 = 5, so the gadget is emitted.
        let mut g = Graph::with_vertices(6);
        for v in 2..6u32 {
            g.bump_edge(v, 0);
            g.bump_edge(v, 1);
        }
        let bg = vc_instance(g, &[0, 1], &[]);
        let res = kernelize_hc_hp_vc(&bg, HamVariant::Cycle).unwrap();
        assert_eq!(res.reduced.graph.num_vertices(), 4); // B + 2 fresh
        assert!(res.reduced.graph.is_independent());

        // |R| = |B| stays unchanged.
        let mut g2 = Graph::with_vertices(4);
        g2.bump_edge(2, 0);
        g2.bump_edge(3, 1);
        let bg2 = vc_instance(g2.clone(), &[0, 1], &[]);
        let res2 = kernelize_hc_hp_vc(&bg2, HamVariant::Path).unwrap();
        assert_eq!(res2.reduced.graph, g2);
    }

    #[test]
    fn gadget_is_always_no() {
        let mut g = Graph::with_vertices(6);
        for v in 2..6u32 {
            g.bump_edge(v, 0);
            g.bump_edge(v, 1);
        }
        let bg = vc_instance(g, &[0, 1], &[]);
        let res = kernelize_hc_hp_vc(&bg, HamVariant::Cycle).unwrap();
        let lim = OracleLimits::with_max_n(20);
        // against a generous clique attachment
        let mut h = Graph::with_vertices(2);
        for extra in [7u32, 8] {
            h.add_vertex(extra);
        }
        for u in [0u32, 1, 7, 8] {
            for v in [0u32, 1, 7, 8] {
                if u < v {
                    h.bump_edge(u, v);
                }
            }
        }
        let att = BoundariedGraph::new(h, bset(&[0, 1]));
        let glued = glue(&res.reduced, &att);
        assert_eq!(
            opt_exact(Problem::Hc, &glued, &lim).unwrap(),
            OptValue::Finite(0)
        );
        assert_eq!(
            opt_exact(Problem::Hp, &glued, &lim).unwrap(),
            OptValue::Finite(0)
        );
    }

    #[test]
    fn deg2_contraction_shrinks_long_cycle_through_boundary() {
        // cycle 0-1-2-3-4-5-0 with boundary {0}: everything else contracts.
        let mut g = Graph::with_vertices(6);
        for v in 0..6u32 {
            g.bump_edge(v, (v + 1) % 6);
        }
        let bg = BoundariedGraph::new(g.clone(), bset(&[0]))
            .with_modulator(BTreeSet::new(), TargetClass::None);
        let res = kernelize_hc_hp_deg2(&bg, HamVariant::Cycle).unwrap();
        // The contracted instance is small, so it passes through; answers
        // must match under the empty attachment.
        let lim = OracleLimits::default();
        let before = opt_exact(
            Problem::Hc,
            &glue(&bg, &empty_attachment(&bg.boundary)),
            &lim,
        )
        .unwrap();
        let after = opt_exact(
            Problem::Hc,
            &glue(&res.reduced, &empty_attachment(&bg.boundary)),
            &lim,
        )
        .unwrap();
        assert_eq!(before, after);
        assert_eq!(before, OptValue::Finite(1));
    }

    #[test]
    fn deg2_pure_cycle_component_alone_keeps_answer() {
        for n in [3u32, 4, 7] {
            let mut g = Graph::with_vertices(n);
            for v in 0..n {
                g.bump_edge(v, (v + 1) % n);
            }
            let bg = BoundariedGraph::new(g, BTreeSet::new())
                .with_modulator(BTreeSet::new(), TargetClass::None);
            let res = kernelize_hc_hp_deg2(&bg, HamVariant::Cycle).unwrap();
            let lim = OracleLimits::default();
            let v = opt_exact(Problem::Hc, &res.reduced.graph, &lim).unwrap();
            assert_eq!(v, OptValue::Finite(1), "cycle C{n} stays YES");
        }
    }

    #[test]
    fn deg2_cycle_component_plus_more_is_always_no() {
        // C4 component plus an extra boundary vertex: disconnected forever.
        let mut g = Graph::with_vertices(5);
        for v in 0..4u32 {
            g.bump_edge(v, (v + 1) % 4);
        }
        let bg = BoundariedGraph::new(g, bset(&[4])).with_modulator(bset(&[]), TargetClass::None);
        let res = kernelize_hc_hp_deg2(&bg, HamVariant::Path).unwrap();
        // gadget: boundary + 2 isolated
        assert!(res.reduced.graph.is_independent());
        assert_eq!(res.reduced.graph.num_vertices(), 3);
    }

    #[test]
    fn deg2_no_adjacent_pair_is_direct_delegation() {
        let mut g = Graph::with_vertices(3);
        g.bump_edge(0, 1);
        g.bump_edge(1, 2);
        g.bump_edge(2, 0);
        let bg = BoundariedGraph::new(g.clone(), bset(&[1]))
            .with_modulator(bset(&[0, 2]), TargetClass::None);
        let res = kernelize_hc_hp_deg2(&bg, HamVariant::Cycle).unwrap();
        assert_eq!(res.reduced.graph, g);
    }

    #[test]
    fn deg2_hanging_triangle_path_semantics() {
        // Triangle z-u-v hanging at boundary vertex z, plus a pendant chain
        // at z: HP exists (end inside the triangle), HC does not.
        let mut g = Graph::with_vertices(5);
        g.bump_edge(0, 1);
        g.bump_edge(0, 2);
        g.bump_edge(1, 2);
        g.bump_edge(0, 3);
        g.bump_edge(3, 4);
        // degrees: 0 -> 3, 3 -> 2, 4 -> 1; modulator must contain 0 and 4.
        let bg = BoundariedGraph::new(g.clone(), bset(&[0]))
            .with_modulator(bset(&[0, 4]), TargetClass::None);
        let lim = OracleLimits::default();
        for which in [HamVariant::Path, HamVariant::Cycle] {
            let res = kernelize_hc_hp_deg2(&bg, which).unwrap();
            let p = match which {
                HamVariant::Path => Problem::Hp,
                HamVariant::Cycle => Problem::Hc,
            };
            let before = opt_exact(p, &glue(&bg, &empty_attachment(&bg.boundary)), &lim).unwrap();
            let after = opt_exact(
                p,
                &glue(&res.reduced, &empty_attachment(&bg.boundary)),
                &lim,
            )
            .unwrap();
            assert_eq!(before, after, "{which:?}");
        }
    }
}
