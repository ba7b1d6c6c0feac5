//! Boundaried kernelization of Vertex Cover parameterized by vertex cover:
//! isolated-vertex removal plus crown reduction, with crowns located as tail
//! strongly connected components of a matching-oriented auxiliary graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{
    lift_modulator_into_boundary, shrink_boundary, BoundariedGraph, TargetClass, VertexId,
};
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::{tail_sccs, Digraph};

/// A crown: independent set I outside the boundary, its neighborhood H, and
/// an H-saturating matching into I.
#[derive(Clone, Debug)]
pub struct Crown {
    pub ind: BTreeSet<VertexId>,
    pub head: BTreeSet<VertexId>,
    /// head vertex -> its matched partner in `ind`.
    pub matching: BTreeMap<VertexId, VertexId>,
}

/// Vertices already locked into reduced crowns; they only grow during a run.
#[derive(Clone, Debug, Default)]
pub struct CrownMarks {
    pub ind: BTreeSet<VertexId>,
    pub head: BTreeSet<VertexId>,
}

impl CrownMarks {
    pub fn contains(&self, v: VertexId) -> bool {
        self.ind.contains(&v) || self.head.contains(&v)
    }

    fn all(&self) -> BTreeSet<VertexId> {
        self.ind.union(&self.head).copied().collect()
    }
}

/// Delete isolated non-boundary vertices; returns how many were removed.
pub fn rr_remove_isolated(g: &mut BoundariedGraph) -> usize {
    let doomed: Vec<VertexId> = g
        .rest()
        .into_iter()
        .filter(|&v| g.graph.is_isolated(v))
        .collect();
    for &v in &doomed {
        g.graph.remove_vertex(v);
    }
    doomed.len()
}

/// Matching-oriented auxiliary graph over the unmarked vertices. The
/// matching is kept warm across rounds and re-augmented after deletions, so
/// repeated crown searches do not start from scratch.
struct CrownFinder {
    warm: BTreeMap<VertexId, VertexId>,
}

impl CrownFinder {
    fn new() -> Self {
        CrownFinder {
            warm: BTreeMap::new(),
        }
    }

    fn find(&mut self, g: &BoundariedGraph, marks: &CrownMarks) -> Option<Crown> {
        let marked = marks.all();
        let xs: Vec<VertexId> = g
            .rest()
            .into_iter()
            .filter(|v| !marked.contains(v))
            .collect();
        let ys: Vec<VertexId> = g.graph.vertices().filter(|v| !marked.contains(v)).collect();
        if xs.is_empty() {
            return None;
        }
        let x_index: BTreeMap<VertexId, usize> =
            xs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let y_index: BTreeMap<VertexId, usize> =
            ys.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); xs.len()];
        for (u, v, _) in g.graph.edges() {
            if u == v {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                if let (Some(&xi), Some(&yi)) = (x_index.get(&a), y_index.get(&b)) {
                    adj[xi].push(yi);
                }
            }
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }

        // Warm-start matching, keeping only still-valid pairs, then augment.
        let mut match_x: Vec<Option<usize>> = vec![None; xs.len()];
        let mut match_y: Vec<Option<usize>> = vec![None; ys.len()];
        for (&xv, &yv) in &self.warm {
            if let (Some(&xi), Some(&yi)) = (x_index.get(&xv), y_index.get(&yv)) {
                if adj[xi].contains(&yi) && match_x[xi].is_none() && match_y[yi].is_none() {
                    match_x[xi] = Some(yi);
                    match_y[yi] = Some(xi);
                }
            }
        }
        crate::solvers::hopcroft_karp(&adj, ys.len(), &mut match_x, &mut match_y);
        self.warm = match_x
            .iter()
            .enumerate()
            .filter_map(|(xi, &m)| m.map(|yi| (xs[xi], ys[yi])))
            .collect();

        // Orient: x -> y for every edge, y -> x for matched edges.
        let nx = xs.len();
        let mut d = Digraph::new(nx + ys.len());
        for (xi, row) in adj.iter().enumerate() {
            for &yi in row {
                d.add_edge(xi, nx + yi);
            }
        }
        for (yi, &m) in match_y.iter().enumerate() {
            if let Some(xi) = m {
                d.add_edge(nx + yi, xi);
            }
        }
        for tail in tail_sccs(&d) {
            let ind: BTreeSet<VertexId> =
                tail.iter().filter(|&&n| n < nx).map(|&n| xs[n]).collect();
            let head: BTreeSet<VertexId> = tail
                .iter()
                .filter(|&&n| n >= nx)
                .map(|&n| ys[n - nx])
                .collect();
            if ind.is_empty() || head.is_empty() || !ind.is_disjoint(&head) {
                continue;
            }
            let mut matching = BTreeMap::new();
            for &h in &head {
                let yi = y_index[&h];
                let xi = match_y[yi].expect("tail SCC y-vertices are matched");
                matching.insert(h, xs[xi]);
            }
            return Some(Crown {
                ind,
                head,
                matching,
            });
        }
        None
    }
}

/// Locate a crown (I, H) with I outside the boundary in the graph minus the
/// marked vertices, or `None` when no such crown remains. Assumes isolated
/// non-boundary vertices were removed first.
pub fn find_crown(g: &BoundariedGraph, marks: &CrownMarks) -> Option<Crown> {
    CrownFinder::new().find(g, marks)
}

/// Apply the crown rule: delete every edge at H not in the fixed matching
/// and mark I and H. Returns the number of deleted edges.
pub fn rr_crown_reduce(
    g: &mut BoundariedGraph,
    crown: &Crown,
    marks: &mut CrownMarks,
) -> Result<usize> {
    validate_crown(g, crown, marks)?;
    let mut doomed: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for &h in &crown.head {
        let keep = crown.matching[&h];
        for u in g.graph.open_neighbor_set(h) {
            if u != keep {
                doomed.insert((h.min(u), h.max(u)));
            }
        }
        if g.graph.has_loop(h) {
            doomed.insert((h, h));
        }
    }
    for &(u, v) in &doomed {
        g.graph.remove_edge(u, v);
    }
    marks.ind.extend(crown.ind.iter().copied());
    marks.head.extend(crown.head.iter().copied());
    Ok(doomed.len())
}

fn validate_crown(g: &BoundariedGraph, crown: &Crown, marks: &CrownMarks) -> Result<()> {
    if crown.ind.is_empty() {
        return Err(Error::precondition("crown with empty independent side"));
    }
    let rest = g.rest();
    for &i in &crown.ind {
        if !rest.contains(&i) || marks.contains(i) {
            return Err(Error::precondition(format!(
                "crown vertex {i} is boundary or already marked"
            )));
        }
        for &j in &crown.ind {
            if i < j && g.graph.has_edge(i, j) {
                return Err(Error::precondition("crown independent side has an edge"));
            }
        }
    }
    let mut nbh: BTreeSet<VertexId> = BTreeSet::new();
    for &i in &crown.ind {
        nbh.extend(g.graph.open_neighbors(i));
    }
    if nbh != crown.head {
        return Err(Error::precondition(
            "crown head is not the neighborhood of I",
        ));
    }
    if crown.head.iter().any(|h| marks.contains(*h)) {
        return Err(Error::precondition("crown head intersects the marks"));
    }
    let mut seen = BTreeSet::new();
    for &h in &crown.head {
        let Some(&i) = crown.matching.get(&h) else {
            return Err(Error::precondition("matching does not saturate the head"));
        };
        if !crown.ind.contains(&i) || !g.graph.has_edge(h, i) || !seen.insert(i) {
            return Err(Error::precondition("invalid crown matching"));
        }
    }
    Ok(())
}

/// Full crown kernel: lift the modulator, exhaust isolated-vertex removal
/// and crown reduction, shrink the boundary back. The output has at most
/// 2(|B| + |X|) vertices and offset 0.
pub fn kernelize_vc_vc(g: &BoundariedGraph) -> Result<KernelResult> {
    if g.modulator.is_none() {
        return Err(Error::precondition("vc kernel requires a modulator"));
    }
    if !g.graph.is_simple() {
        return Err(Error::precondition("vc kernel requires a simple graph"));
    }
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::VertexCover;
        lift_modulator_into_boundary(&h)?
    };
    if !lifted.graph.without(&lifted.boundary).is_independent() {
        return Err(Error::precondition(
            "vc kernel requires the modulator (with the boundary) to be a vertex cover",
        ));
    }
    let mut work = lifted;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let mut marks = CrownMarks::default();
    let mut finder = CrownFinder::new();
    loop {
        trace.bump("vc-iso", rr_remove_isolated(&mut work));
        let Some(crown) = finder.find(&work, &marks) else {
            break;
        };
        let deleted = rr_crown_reduce(&mut work, &crown, &mut marks)?;
        trace.bump("vc-crown", usize::from(deleted > 0));
    }
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
