//! Boundaried kernelization of Vertex Cover with a forest modulator:
//! crown cleanup, perfect-matching boundary extension, then chunk/conflict
//! accounting with heavy-chunk marking and conflict-structure elimination.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{
    lift_modulator_into_boundary, shrink_boundary, BoundariedGraph, Graph, TargetClass, VertexId,
};
use crate::kernel::vc_vc::{rr_remove_isolated, CrownMarks};
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::{max_matching, vc_forest_dp, Bipartite};

/// An independent subset of the working boundary of size 1 or 2 (the
/// maximum size of a minimal blocking set in a forest).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Chunk(pub Vec<VertexId>);

/// Pendant marker leaves: boundary vertex -> its private leaf.
#[derive(Clone, Debug, Default)]
pub struct LeafMarks {
    pub leaves: BTreeMap<VertexId, VertexId>,
}

impl LeafMarks {
    pub fn leaf_ids(&self) -> BTreeSet<VertexId> {
        self.leaves.values().copied().collect()
    }
}

/// conf(F, Z) per component of the working forest, per chunk.
#[derive(Clone, Debug, Default)]
pub struct ConflictTable {
    /// keyed by the smallest vertex id of the component.
    pub by_component: BTreeMap<VertexId, BTreeMap<Chunk, u32>>,
}

impl ConflictTable {
    pub fn total_for(&self, chunk: &Chunk) -> u32 {
        self.by_component
            .values()
            .filter_map(|m| m.get(chunk))
            .sum()
    }

    pub fn active_conflicts(&self) -> u64 {
        self.by_component
            .values()
            .flat_map(|m| m.values())
            .map(|&c| c as u64)
            .sum()
    }
}

/// Working view: boundary is `g.boundary`, leaves are pinned, the rest is R.
fn rest_without_leaves(g: &BoundariedGraph, leaves: &LeafMarks) -> BTreeSet<VertexId> {
    let leaf_ids = leaves.leaf_ids();
    g.rest()
        .into_iter()
        .filter(|v| !leaf_ids.contains(v))
        .collect()
}

/// All chunks of the current graph: independent subsets of the boundary of
/// size 1 or 2.
pub fn chunks_of(g: &BoundariedGraph) -> Vec<Chunk> {
    let bs: Vec<VertexId> = g.boundary.iter().copied().collect();
    let mut out: Vec<Chunk> = bs.iter().map(|&x| Chunk(vec![x])).collect();
    for (i, &x) in bs.iter().enumerate() {
        for &y in &bs[i + 1..] {
            if !g.graph.has_edge(x, y) && !g.graph.has_loop(x) && !g.graph.has_loop(y) {
                out.push(Chunk(vec![x, y]));
            }
        }
    }
    out.retain(|c| c.0.iter().all(|&v| !g.graph.has_loop(v)));
    out.sort();
    out
}

/// conf(F, Z) = OPT_vc(F − N_F(Z)) + |N_F(Z)| − OPT_vc(F) for a tree
/// component F of the working forest.
pub fn conf(g: &Graph, component: &BTreeSet<VertexId>, chunk: &Chunk) -> Result<u32> {
    let sub = g.induced(component);
    let hit: BTreeSet<VertexId> = component
        .iter()
        .copied()
        .filter(|&v| chunk.0.iter().any(|&z| g.has_edge(z, v)))
        .collect();
    let whole = vc_forest_dp(&sub)?;
    let rest = vc_forest_dp(&sub.without(&hit))?;
    Ok(rest + hit.len() as u32 - whole)
}

/// Recompute the full conflict table for the current graph.
pub fn conflict_table(g: &BoundariedGraph, leaves: &LeafMarks) -> Result<ConflictTable> {
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    let chunks = chunks_of(g);
    let mut table = ConflictTable::default();
    for comp in forest.components() {
        let key = *comp.iter().next().unwrap();
        let mut row = BTreeMap::new();
        for chunk in &chunks {
            row.insert(chunk.clone(), conf(&g.graph, &comp, chunk)?);
        }
        table.by_component.insert(key, row);
    }
    Ok(table)
}

/// Extend the boundary by the vertices unmatched in a maximum matching of
/// the working forest, so the remainder has a perfect matching. Returns the
/// new boundary. Assumes the crown rules were exhausted, which bounds the
/// extension by |B|.
pub fn perfect_matching_cleanup(g: &mut BoundariedGraph) -> Result<BTreeSet<VertexId>> {
    let rest = g.rest();
    let forest = g.graph.induced(&rest);
    if !forest.is_forest() {
        return Err(Error::precondition(
            "cleanup expects a forest outside the boundary",
        ));
    }
    let unmatched = forest_unmatched(&forest);
    let mut b2 = g.boundary.clone();
    b2.extend(unmatched.iter().copied());
    g.boundary = b2.clone();
    Ok(b2)
}

/// Vertices of a forest left unmatched by a maximum matching (forests are
/// bipartite, so Hopcroft-Karp applies after 2-coloring).
fn forest_unmatched(forest: &Graph) -> BTreeSet<VertexId> {
    let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
    for comp in forest.components() {
        let root = *comp.iter().next().unwrap();
        let mut stack = vec![(root, false)];
        while let Some((v, c)) = stack.pop() {
            if color.contains_key(&v) {
                continue;
            }
            color.insert(v, c);
            for u in forest.open_neighbors(v) {
                stack.push((u, !c));
            }
        }
    }
    let left: Vec<VertexId> = color.iter().filter(|(_, &c)| !c).map(|(&v, _)| v).collect();
    let right: Vec<VertexId> = color.iter().filter(|(_, &c)| c).map(|(&v, _)| v).collect();
    let mut bip = Bipartite::new(left.clone(), right.clone());
    for (u, v, _) in forest.edges() {
        let (l, r) = if *color.get(&u).unwrap() {
            (v, u)
        } else {
            (u, v)
        };
        bip.add_edge(l, r);
    }
    let m = max_matching(&bip);
    let covered: BTreeSet<VertexId> = m.pairs.iter().flat_map(|&(l, r)| [l, r]).collect();
    forest.vertices().filter(|v| !covered.contains(v)).collect()
}

/// Delete one component on which every chunk has zero conflict; the offset
/// grows by that component's optimum. Returns the gained offset.
pub fn rr_zero_conflict_component(
    g: &mut BoundariedGraph,
    table: &ConflictTable,
    leaves: &LeafMarks,
) -> Result<Option<i64>> {
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    for comp in forest.components() {
        let key = *comp.iter().next().unwrap();
        let Some(row) = table.by_component.get(&key) else {
            continue;
        };
        if row.values().all(|&c| c == 0) {
            let opt = vc_forest_dp(&forest.induced(&comp))? as i64;
            g.graph.remove_vertices(&comp);
            return Ok(Some(opt));
        }
    }
    Ok(None)
}

/// Handle one chunk whose total conflict reaches |B|: a singleton {x} gets a
/// private leaf and loses its edges into R; a pair {x, y} becomes an edge.
pub fn rr_heavy_chunk(
    g: &mut BoundariedGraph,
    table: &ConflictTable,
    leaves: &mut LeafMarks,
) -> Result<Option<&'static str>> {
    let b = g.boundary.len() as u32;
    let rest = rest_without_leaves(g, leaves);
    for chunk in chunks_of(g) {
        if table.total_for(&chunk) < b {
            continue;
        }
        match chunk.0.as_slice() {
            [x] => {
                if leaves.leaves.contains_key(x) {
                    continue;
                }
                let x = *x;
                let leaf = g.graph.fresh_id();
                g.graph.add_vertex(leaf);
                g.graph.ensure_edge(x, leaf);
                leaves.leaves.insert(x, leaf);
                let doomed: Vec<VertexId> = g
                    .graph
                    .open_neighbor_set(x)
                    .into_iter()
                    .filter(|v| rest.contains(v))
                    .collect();
                for v in doomed {
                    g.graph.remove_edge(x, v);
                }
                return Ok(Some("vcfvs-chunk1"));
            }
            [x, y] => {
                g.graph.ensure_edge(*x, *y);
                return Ok(Some("vcfvs-chunk2"));
            }
            _ => unreachable!("chunks have size 1 or 2"),
        }
    }
    Ok(None)
}

/// Is the pair blockable: does some chunk have both vertices in its
/// neighborhood?
fn blockable(g: &BoundariedGraph, chunks: &[Chunk], a: VertexId, b: VertexId) -> bool {
    chunks.iter().any(|z| {
        z.0.iter().any(|&x| g.graph.has_edge(x, a)) && z.0.iter().any(|&x| g.graph.has_edge(x, b))
    })
}

/// First applicable unblockable adjacent pair with both degrees at most 2 in
/// the working forest, if any.
pub fn find_unblockable_pair(
    g: &BoundariedGraph,
    leaves: &LeafMarks,
) -> Option<(VertexId, VertexId)> {
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    let chunks = chunks_of(g);
    for (u, v, _) in forest.edges() {
        if u == v {
            continue;
        }
        if forest.degree(u) <= 2 && forest.degree(v) <= 2 && !blockable(g, &chunks, u, v) {
            return Some((u, v));
        }
    }
    None
}

pub(crate) struct Conf1Opts {
    pub delta: i64,
    pub add_joining_edge: bool,
    pub inherit_boundary: bool,
}

impl Default for Conf1Opts {
    fn default() -> Self {
        Conf1Opts {
            delta: 1,
            add_joining_edge: true,
            inherit_boundary: true,
        }
    }
}

/// Delete an unblockable low-degree adjacent pair, rewiring the survivors.
/// Returns the offset gained (1), or `None` when no pair applies.
pub fn rr_unblockable_pair(g: &mut BoundariedGraph, leaves: &LeafMarks) -> Result<Option<i64>> {
    rr_unblockable_pair_opts(g, leaves, &Conf1Opts::default())
}

pub(crate) fn rr_unblockable_pair_opts(
    g: &mut BoundariedGraph,
    leaves: &LeafMarks,
    opts: &Conf1Opts,
) -> Result<Option<i64>> {
    let Some((u, v)) = find_unblockable_pair(g, leaves) else {
        return Ok(None);
    };
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    let t = forest.open_neighbors(u).find(|&w| w != v);
    let w = forest.open_neighbors(v).find(|&w| w != u);
    let b_of = |g: &BoundariedGraph, z: VertexId| -> Vec<VertexId> {
        g.boundary
            .iter()
            .copied()
            .filter(|&x| g.graph.has_edge(x, z))
            .collect()
    };
    let nb_u = b_of(g, u);
    let nb_v = b_of(g, v);
    g.graph.remove_vertex(u);
    g.graph.remove_vertex(v);
    if opts.inherit_boundary {
        if let Some(t) = t {
            for &x in &nb_v {
                g.graph.ensure_edge(t, x);
            }
        }
        if let Some(w) = w {
            for &x in &nb_u {
                g.graph.ensure_edge(w, x);
            }
        }
    }
    if opts.add_joining_edge {
        if let (Some(t), Some(w)) = (t, w) {
            g.graph.ensure_edge(t, w);
        }
    }
    Ok(Some(opts.delta))
}

/// Locate a path t-u-v-w with inner degrees 3, pendant ends, and all three
/// relevant pairs unblockable.
pub fn find_unblockable_quad(
    g: &BoundariedGraph,
    leaves: &LeafMarks,
) -> Option<(VertexId, VertexId, VertexId, VertexId)> {
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    let chunks = chunks_of(g);
    for (u, v, _) in forest.edges() {
        if u == v {
            continue;
        }
        for (u, v) in [(u, v), (v, u)] {
            if forest.degree(u) != 3 || forest.degree(v) != 3 {
                continue;
            }
            let ts: Vec<VertexId> = forest
                .open_neighbors(u)
                .filter(|&t| t != v && forest.degree(t) == 1)
                .collect();
            let ws: Vec<VertexId> = forest
                .open_neighbors(v)
                .filter(|&w| w != u && forest.degree(w) == 1)
                .collect();
            for &t in &ts {
                for &w in &ws {
                    if t == w {
                        continue;
                    }
                    if !blockable(g, &chunks, u, t)
                        && !blockable(g, &chunks, v, w)
                        && !blockable(g, &chunks, t, w)
                    {
                        return Some((t, u, v, w));
                    }
                }
            }
        }
    }
    None
}

pub(crate) struct Conf2Opts {
    pub delta: i64,
    pub inherit_boundary: bool,
}

impl Default for Conf2Opts {
    fn default() -> Self {
        Conf2Opts {
            delta: 2,
            inherit_boundary: true,
        }
    }
}

/// Delete the degree-pattern quad t-u-v-w; the third neighbors inherit the
/// boundary adjacency of the pendant ends. Returns the offset gained (2).
pub fn rr_unblockable_quad(g: &mut BoundariedGraph, leaves: &LeafMarks) -> Result<Option<i64>> {
    rr_unblockable_quad_opts(g, leaves, &Conf2Opts::default())
}

pub(crate) fn rr_unblockable_quad_opts(
    g: &mut BoundariedGraph,
    leaves: &LeafMarks,
    opts: &Conf2Opts,
) -> Result<Option<i64>> {
    let Some((t, u, v, w)) = find_unblockable_quad(g, leaves) else {
        return Ok(None);
    };
    let rest = rest_without_leaves(g, leaves);
    let forest = g.graph.induced(&rest);
    let p = forest
        .open_neighbors(u)
        .find(|&z| z != t && z != v)
        .expect("degree-3 vertex has a third neighbor");
    let q = forest
        .open_neighbors(v)
        .find(|&z| z != u && z != w)
        .expect("degree-3 vertex has a third neighbor");
    let b_of = |g: &BoundariedGraph, z: VertexId| -> Vec<VertexId> {
        g.boundary
            .iter()
            .copied()
            .filter(|&x| g.graph.has_edge(x, z))
            .collect()
    };
    let nb_t = b_of(g, t);
    let nb_w = b_of(g, w);
    for z in [t, u, v, w] {
        g.graph.remove_vertex(z);
    }
    if opts.inherit_boundary {
        for &x in &nb_t {
            g.graph.ensure_edge(p, x);
        }
        for &x in &nb_w {
            g.graph.ensure_edge(q, x);
        }
    }
    Ok(Some(opts.delta))
}

pub(crate) struct VcFvsOpts {
    pub conf1: Conf1Opts,
    pub conf2: Conf2Opts,
    pub component_delta: bool,
}

impl Default for VcFvsOpts {
    fn default() -> Self {
        VcFvsOpts {
            conf1: Conf1Opts::default(),
            conf2: Conf2Opts::default(),
            component_delta: true,
        }
    }
}

/// Full forest kernel for Vertex Cover. Pipeline: lift the modulator, run
/// the crown rules, extend the boundary until the remaining forest has a
/// perfect matching, then exhaust the component / heavy-chunk / pair / quad
/// rules, and shrink the boundary back.
pub fn kernelize_vc_fvs(g: &BoundariedGraph) -> Result<KernelResult> {
    kernelize_vc_fvs_opts(g, &VcFvsOpts::default())
}

pub(crate) fn kernelize_vc_fvs_opts(g: &BoundariedGraph, opts: &VcFvsOpts) -> Result<KernelResult> {
    if g.modulator.is_none() {
        return Err(Error::precondition("vc[fvs] kernel requires a modulator"));
    }
    if !g.graph.is_simple() {
        return Err(Error::precondition("vc[fvs] kernel requires a simple graph"));
    }
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::Forest;
        lift_modulator_into_boundary(&h)?
    };
    if !lifted.graph.without(&lifted.boundary).is_forest() {
        return Err(Error::precondition(
            "vc[fvs] kernel requires a forest modulator",
        ));
    }
    let mut work = lifted;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let mut delta = 0i64;

    // Crown phase.
    let mut marks = CrownMarks::default();
    loop {
        trace.bump("vc-iso", rr_remove_isolated(&mut work));
        let Some(crown) = crate::kernel::vc_vc::find_crown(&work, &marks) else {
            break;
        };
        let deleted = crate::kernel::vc_vc::rr_crown_reduce(&mut work, &crown, &mut marks)?;
        trace.bump("vc-crown", usize::from(deleted > 0));
    }

    // Perfect-matching cleanup.
    let before = work.boundary.len();
    perfect_matching_cleanup(&mut work)?;
    trace.bump("vcfvs-cleanup", work.boundary.len() - before);

    // Conflict-based rules to a fixed point.
    let mut leaves = LeafMarks::default();
    loop {
        let table = conflict_table(&work, &leaves)?;
        if let Some(gain) = rr_zero_conflict_component(&mut work, &table, &leaves)? {
            if opts.component_delta {
                delta += gain;
            }
            trace.bump("vcfvs-component", 1);
            continue;
        }
        if let Some(rule) = rr_heavy_chunk(&mut work, &table, &mut leaves)? {
            trace.bump(rule, 1);
            continue;
        }
        if let Some(gain) = rr_unblockable_pair_opts(&mut work, &leaves, &opts.conf1)? {
            delta += gain;
            trace.bump("vcfvs-conf1", 1);
            continue;
        }
        if let Some(gain) = rr_unblockable_quad_opts(&mut work, &leaves, &opts.conf2)? {
            delta += gain;
            trace.bump("vcfvs-conf2", 1);
            continue;
        }
        break;
    }

    let lifted_boundary = work.boundary.len();
    let special_leaves = leaves.leaves.len();
    let mut modulator = work.boundary.clone();
    modulator.extend(leaves.leaf_ids());
    let mut reduced = shrink_boundary(&work, &g.boundary)?;
    reduced.modulator = Some(modulator);
    reduced.target_class = TargetClass::Forest;
    reduced.td_parents = None;
    let stats = KernelStats {
        lifted_boundary,
        special_leaves,
        ..stats.finish(&reduced)
    };
    Ok(KernelResult {
        reduced,
        delta: Some(delta),
        trace,
        stats,
    })
}
