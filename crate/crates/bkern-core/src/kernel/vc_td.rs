//! Recursive boundaried kernelization of Vertex Cover with a modulator to
//! bounded treedepth, and the regular kernel derived from it by running with
//! an empty boundary.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{
    glue, lift_modulator_into_boundary, shrink_boundary, BoundariedGraph, Graph, TargetClass,
    VertexId,
};
use crate::kernel::vc_fvs::Chunk;
use crate::kernel::vc_vc::kernelize_vc_vc;
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::{
    hall_violator, subsets_of_size, vc_bounded_td_dp, Bipartite, Side, TreedepthDecomposition,
};

/// Blocking-set bound for treedepth d >= 2.
pub fn blocking_bound(d: u32) -> u32 {
    debug_assert!(d >= 2);
    (1 << (d - 2)) + 1
}

/// The component-vs-chunk bipartite system used to prune components.
#[derive(Clone, Debug)]
pub struct TdChunkSystem {
    pub blocking_bound: u32,
    pub chunks: Vec<Chunk>,
    pub components: Vec<BTreeSet<VertexId>>,
    pub decompositions: Vec<TreedepthDecomposition>,
    /// conf(F, Z) for positive entries only: (component index, chunk index).
    pub conflicts: BTreeMap<(usize, usize), u32>,
    /// Hall violator on the chunk side (empty when a saturating matching
    /// exists).
    pub violator_chunks: Vec<usize>,
    /// Matching on chunks outside the violator: chunk index -> component.
    pub matching: BTreeMap<usize, usize>,
    /// Components neither matched nor adjacent to the violator.
    pub dropped: Vec<usize>,
}

/// Decomposition of one component: taken from the instance sidecar when it
/// covers the component, otherwise computed exactly.
fn component_decomposition(
    g: &BoundariedGraph,
    comp: &BTreeSet<VertexId>,
    d: u32,
) -> Result<TreedepthDecomposition> {
    let sub = g.graph.induced(comp);
    if let Some(sidecar) = &g.td_parents {
        if comp.iter().all(|v| sidecar.contains_key(v)) {
            let restricted: BTreeMap<VertexId, VertexId> = comp
                .iter()
                .map(|&v| {
                    let p = sidecar[&v];
                    (v, if comp.contains(&p) { p } else { v })
                })
                .collect();
            let dec = TreedepthDecomposition::from_parent_pointers(&restricted)?;
            if dec.validate(&sub).is_ok() && dec.height <= d {
                return Ok(dec);
            }
        }
    }
    match crate::solvers::treedepth_decompose(&sub, d, 20)? {
        Some(dec) => Ok(dec),
        None => Err(Error::precondition(format!(
            "component has treedepth above the budget {d}"
        ))),
    }
}

/// Build the chunk system for a lifted instance whose non-boundary part has
/// treedepth at most d (d >= 2).
pub fn build_chunk_system(g: &BoundariedGraph, d: u32) -> Result<TdChunkSystem> {
    if d < 2 {
        return Err(Error::precondition("chunk system needs depth at least 2"));
    }
    let b = blocking_bound(d);
    let rest = g.rest();
    let forest_part = g.graph.induced(&rest);
    let components = forest_part.components();
    let mut decompositions = Vec::new();
    for comp in &components {
        decompositions.push(component_decomposition(g, comp, d)?);
    }
    // Chunks: independent subsets of the boundary of size 1..=b.
    let bs: Vec<VertexId> = g.boundary.iter().copied().collect();
    let mut chunks = Vec::new();
    if bs.len() <= 30 {
        let full = if bs.is_empty() {
            0
        } else {
            (1u32 << bs.len()) - 1
        };
        for size in 1..=b.min(bs.len() as u32) {
            for mask in subsets_of_size(full, size) {
                let z: Vec<VertexId> = bs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let independent = z
                    .iter()
                    .all(|&u| z.iter().all(|&v| u >= v || !g.graph.has_edge(u, v)));
                if independent {
                    chunks.push(Chunk(z));
                }
            }
        }
    } else {
        return Err(Error::OracleCap(
            "boundary too large for chunk enumeration".into(),
        ));
    }
    chunks.sort();

    let mut conflicts = BTreeMap::new();
    for (ci, comp) in components.iter().enumerate() {
        let dec = &decompositions[ci];
        let sub = g.graph.induced(comp);
        let whole = vc_bounded_td_dp(&sub, dec, &BTreeSet::new())?;
        for (zi, chunk) in chunks.iter().enumerate() {
            let hit: BTreeSet<VertexId> = comp
                .iter()
                .copied()
                .filter(|&v| chunk.0.iter().any(|&z| g.graph.has_edge(z, v)))
                .collect();
            if hit.is_empty() {
                continue;
            }
            let rest_opt = vc_bounded_td_dp(&sub, dec, &hit)?;
            let conf = rest_opt + hit.len() as u32 - whole;
            if conf > 0 {
                conflicts.insert((ci, zi), conf);
            }
        }
    }

    // Bipartite chunks-vs-components graph on the positive entries.
    let chunk_ids: Vec<u32> = (0..chunks.len() as u32).collect();
    let comp_ids: Vec<u32> = (0..components.len() as u32).collect();
    let mut bip = Bipartite::new(chunk_ids, comp_ids);
    for &(ci, zi) in conflicts.keys() {
        bip.add_edge(zi as u32, ci as u32);
    }
    let (violator_chunks, matching) = match hall_violator(&bip, Side::Left) {
        None => {
            let m = crate::solvers::max_matching(&bip);
            (Vec::new(), m.pairs)
        }
        Some(hv) => (
            hv.witness.iter().map(|&z| z as usize).collect(),
            hv.matching.pairs,
        ),
    };
    let matching: BTreeMap<usize, usize> = matching
        .into_iter()
        .filter(|(z, _)| !violator_chunks.contains(&(*z as usize)))
        .map(|(z, c)| (z as usize, c as usize))
        .collect();

    let violator_adjacent: BTreeSet<usize> = conflicts
        .keys()
        .filter(|(_, zi)| violator_chunks.contains(zi))
        .map(|&(ci, _)| ci)
        .collect();
    let matched_comps: BTreeSet<usize> = matching.values().copied().collect();
    let dropped: Vec<usize> = (0..components.len())
        .filter(|ci| !violator_adjacent.contains(ci) && !matched_comps.contains(ci))
        .collect();

    Ok(TdChunkSystem {
        blocking_bound: b,
        chunks,
        components,
        decompositions,
        conflicts,
        violator_chunks,
        matching,
        dropped,
    })
}

/// Delete the unmatched, un-dominated components; the offset grows by the
/// sum of their optima.
pub fn rr_delete_unmatched_components(g: &mut BoundariedGraph, sys: &TdChunkSystem) -> Result<i64> {
    let mut delta = 0i64;
    for &ci in &sys.dropped {
        let comp = &sys.components[ci];
        let sub = g.graph.induced(comp);
        delta += vc_bounded_td_dp(&sub, &sys.decompositions[ci], &BTreeSet::new())? as i64;
        g.graph.remove_vertices(comp);
    }
    Ok(delta)
}

/// One pruning pass: build the system and delete droppable components.
pub fn reduce_component_count(g: &mut BoundariedGraph, d: u32) -> Result<i64> {
    let sys = build_chunk_system(g, d)?;
    rr_delete_unmatched_components(g, &sys)
}

/// Recursive treedepth kernel. Depth 1 is the crown kernel; deeper levels
/// prune components, partition the survivors into groups of at most |B|
/// components, recurse per group with the decomposition roots lifted into
/// the boundary, and reassemble by gluing.
pub fn kernelize_vc_td(g: &BoundariedGraph, d: u32) -> Result<KernelResult> {
    if d < 1 {
        return Err(Error::precondition(
            "treedepth parameter must be at least 1",
        ));
    }
    if g.modulator.is_none() {
        return Err(Error::precondition("vc[td] kernel requires a modulator"));
    }
    if !g.graph.is_simple() {
        return Err(Error::precondition("vc[td] kernel requires a simple graph"));
    }
    if d == 1 {
        return kernelize_vc_vc(g);
    }
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::Treedepth(d);
        lift_modulator_into_boundary(&h)?
    };
    let mut work = lifted;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let mut delta = 0i64;

    let sys = build_chunk_system(&work, d)?;
    trace.bump("vctd-drop-component", sys.dropped.len());
    delta += rr_delete_unmatched_components(&mut work, &sys)?;

    // Survivors, largest first for deterministic greedy grouping.
    let rest = work.rest();
    let mut comps = work.graph.induced(&rest).components();
    comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), *c.iter().next().unwrap()));
    let group_cap = work.boundary.len().max(1);
    let groups: Vec<Vec<BTreeSet<VertexId>>> = comps
        .chunks(group_cap)
        .map(|chunk| chunk.to_vec())
        .collect();

    let base_boundary = work.boundary.clone();
    let mut pieces: Vec<BoundariedGraph> = Vec::new();
    for group in &groups {
        let mut verts: BTreeSet<VertexId> = base_boundary.clone();
        let mut roots: BTreeSet<VertexId> = BTreeSet::new();
        let mut child_parents: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for comp in group {
            verts.extend(comp.iter().copied());
            let dec = component_decomposition(&work, comp, d)?;
            let comp_roots = dec.roots();
            roots.extend(comp_roots.iter().copied());
            for (&c, &p) in &dec.to_parent_pointers() {
                if comp_roots.contains(&c) {
                    continue; // roots move to the boundary
                }
                let parent = if comp_roots.contains(&p) { c } else { p };
                child_parents.insert(c, parent);
            }
        }
        let mut sub_boundary = base_boundary.clone();
        sub_boundary.extend(roots.iter().copied());
        let piece_in = BoundariedGraph {
            graph: work.graph.induced(&verts),
            boundary: sub_boundary.clone(),
            modulator: Some(sub_boundary),
            target_class: TargetClass::Treedepth(d - 1),
            td_parents: Some(child_parents),
        };
        let res = kernelize_vc_td(&piece_in, d - 1)?;
        delta += res.delta.unwrap_or(0);
        trace.merge(&res.trace);
        pieces.push(shrink_boundary(&res.reduced, &base_boundary)?);
    }

    // Reassemble over the shared working boundary.
    let mut assembled = BoundariedGraph {
        graph: work.graph.induced(&base_boundary),
        boundary: base_boundary.clone(),
        modulator: Some(base_boundary.clone()),
        target_class: TargetClass::Treedepth(d),
        td_parents: None,
    };
    for piece in &pieces {
        assembled.graph = glue(&assembled, piece);
    }

    let lifted_boundary = base_boundary.len();
    let mut reduced = shrink_boundary(&assembled, &g.boundary)?;
    reduced.modulator = Some(base_boundary);
    reduced.target_class = TargetClass::Treedepth(d);
    let stats = KernelStats {
        lifted_boundary,
        ..stats.finish(&reduced)
    };
    Ok(KernelResult {
        reduced,
        delta: Some(delta),
        trace,
        stats,
    })
}

/// Output of the regular-kernel derivation: an equivalent plain instance.
#[derive(Clone, Debug)]
pub struct RegularKernel {
    pub graph: Graph,
    pub modulator: BTreeSet<VertexId>,
    pub ell: i64,
    /// Offset that was folded into `ell`.
    pub delta: i64,
}

/// Run the boundaried kernel with an empty boundary and fold the offset into
/// the sought value: a regular kernelization for Vertex Cover with a
/// treedepth modulator. Out-of-range targets collapse to a fixed NO
/// instance.
pub fn regular_kernel_vc_td(
    g: &Graph,
    modulator: &BTreeSet<VertexId>,
    d: u32,
    ell: i64,
) -> Result<RegularKernel> {
    let bg = BoundariedGraph {
        graph: g.clone(),
        boundary: BTreeSet::new(),
        modulator: Some(modulator.clone()),
        target_class: TargetClass::Treedepth(d),
        td_parents: None,
    };
    let res = kernelize_vc_td(&bg, d)?;
    let delta = res.delta.unwrap_or(0);
    if delta > ell {
        // No solution of value ell - delta < 0 exists: fixed NO instance.
        let mut no = Graph::with_vertices(2);
        no.bump_edge(0, 1);
        return Ok(RegularKernel {
            graph: no,
            modulator: [0].into_iter().collect(),
            ell: 0,
            delta,
        });
    }
    let reduced = res.reduced;
    let n = reduced.graph.num_vertices() as i64;
    Ok(RegularKernel {
        graph: reduced.graph,
        modulator: reduced.modulator.unwrap_or_default(),
        ell: (ell - delta).min(n),
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{opt_exact, OptValue, OracleLimits, Problem};

    fn bset(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    fn td_instance(g: Graph, boundary: &[u32], modulator: &[u32], d: u32) -> BoundariedGraph {
        BoundariedGraph::new(g, bset(boundary))
            .with_modulator(bset(modulator), TargetClass::Treedepth(d))
    }

    #[test]
    fn blocking_bound_matches_forest_case() {
        assert_eq!(blocking_bound(2), 2);
        assert_eq!(blocking_bound(3), 3);
        assert_eq!(blocking_bound(4), 5);
    }

    #[test]
    fn empty_boundary_drops_every_component() {
        // Two stars, no boundary: everything is deleted and the offset is
        // the whole optimum.
        let mut g = Graph::with_vertices(8);
        for v in 1..4u32 {
            g.bump_edge(0, v);
        }
        for v in 5..8u32 {
            g.bump_edge(4, v);
        }
        let bg = td_instance(g.clone(), &[], &[], 2);
        let res = kernelize_vc_td(&bg, 2).unwrap();
        assert_eq!(res.reduced.graph.num_vertices(), 0);
        let opt = opt_exact(Problem::Vc, &g, &OracleLimits::default()).unwrap();
        assert_eq!(OptValue::Finite(res.delta.unwrap()), opt);
    }

    #[test]
    fn duplicate_components_are_pruned() {
        // Many copies of one pendant component hanging off the boundary.
        let mut g = Graph::new();
        g.add_vertex(0);
        g.add_vertex(1);
        let mut next = 2u32;
        for _ in 0..10 {
            let a = next;
            next += 1;
            g.add_vertex(a);
            g.bump_edge(0, a);
            g.bump_edge(1, a);
        }
        let bg = td_instance(g, &[0, 1], &[], 2);
        let mut lifted = lift_modulator_into_boundary(&bg).unwrap();
        let sys = build_chunk_system(&lifted, 2).unwrap();
        assert!(!sys.dropped.is_empty());
        let before = lifted.graph.num_vertices();
        reduce_component_count(&mut lifted, 2).unwrap();
        assert!(lifted.graph.num_vertices() < before);
    }

    #[test]
    fn d1_delegates_to_the_crown_kernel() {
        let mut g = Graph::with_vertices(5);
        for v in 1..5u32 {
            g.bump_edge(0, v);
        }
        let bg = BoundariedGraph::new(g, bset(&[0]))
            .with_modulator(BTreeSet::new(), TargetClass::Treedepth(1));
        let via_td = kernelize_vc_td(&bg, 1).unwrap();
        let direct = kernelize_vc_vc(&bg).unwrap();
        assert_eq!(via_td.reduced.graph, direct.reduced.graph);
        assert_eq!(via_td.delta, direct.delta);
    }

    #[test]
    fn stars_from_boundary_reduce_at_depth_two() {
        // Stars hanging under boundary vertices, leaves wired back to the
        // boundary so that conflicts are positive and the recursion runs.
        let mut g = Graph::with_vertices(2);
        let mut next = 2u32;
        for b in [0u32, 1] {
            for _ in 0..3 {
                let center = next;
                next += 1;
                g.add_vertex(center);
                g.bump_edge(b, center);
                for _ in 0..2 {
                    let leaf = next;
                    next += 1;
                    g.add_vertex(leaf);
                    g.bump_edge(center, leaf);
                    g.bump_edge(b, leaf);
                }
            }
        }
        let bg = td_instance(g.clone(), &[0, 1], &[], 2);
        let res = kernelize_vc_td(&bg, 2).unwrap();
        // Equivalence under the empty attachment.
        let lim = OracleLimits::with_max_n(20);
        let before = opt_exact(Problem::Vc, &g, &lim).unwrap();
        let after = opt_exact(Problem::Vc, &res.reduced.graph, &lim).unwrap();
        assert_eq!(before, after.plus(res.delta.unwrap()));
        // Output stays within the d=2 polynomial envelope.
        let b = 2;
        assert!(res.reduced.graph.num_vertices() <= 30 * b * b);
    }

    #[test]
    fn regular_kernel_matches_oracle_answers() {
        let mut g = Graph::with_vertices(3);
        g.bump_edge(0, 1);
        g.bump_edge(1, 2);
        let modulator = BTreeSet::new();
        let lim = OracleLimits::default();
        let opt = match opt_exact(Problem::Vc, &g, &lim).unwrap() {
            OptValue::Finite(v) => v,
            _ => unreachable!(),
        };
        for ell in 0..4i64 {
            let rk = regular_kernel_vc_td(&g, &modulator, 2, ell).unwrap();
            let opt2 = match opt_exact(Problem::Vc, &rk.graph, &lim).unwrap() {
                OptValue::Finite(v) => v,
                _ => unreachable!(),
            };
            assert_eq!(opt <= ell, opt2 <= rk.ell, "ell = {ell}");
        }
    }

    #[test]
    fn out_of_range_target_is_a_fixed_no_instance() {
        let mut g = Graph::with_vertices(4);
        g.bump_edge(0, 1);
        g.bump_edge(2, 3);
        let rk = regular_kernel_vc_td(&g, &BTreeSet::new(), 2, 1).unwrap();
        // OPT = 2 > ell = 1, and with an empty boundary delta = 2 > 1.
        assert_eq!(rk.graph.num_vertices(), 2);
        assert_eq!(rk.ell, 0);
    }
}
