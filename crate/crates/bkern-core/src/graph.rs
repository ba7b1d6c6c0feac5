use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Undirected multigraph with edge multiplicity at most 2 and loops of
/// multiplicity exactly 1. Vertex ids are arbitrary non-negative integers;
/// all iteration orders are ascending, so operations are reproducible.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    verts: BTreeSet<VertexId>,
    // Symmetric adjacency; a loop at v is stored once as adj[v][v] = 1.
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u8>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.verts.len())?;
        for (i, (u, v, m)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}x{m}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        g
    }

    pub fn from_edge_list(n: u32, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.bump_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.verts.insert(v);
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.verts.contains(&v)
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if !self.verts.remove(&v) {
            return;
        }
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs.keys() {
                if *u != v {
                    if let Some(m) = self.adj.get_mut(u) {
                        m.remove(&v);
                    }
                }
            }
        }
    }

    pub fn remove_vertices<'a>(&mut self, vs: impl IntoIterator<Item = &'a VertexId>) {
        for &v in vs {
            self.remove_vertex(v);
        }
    }

    /// Set the multiplicity of edge {u, v}. Validates the multiplicity range.
    pub fn set_edge(&mut self, u: VertexId, v: VertexId, mult: u8) -> Result<()> {
        if mult == 0 || mult > 2 || (u == v && mult != 1) {
            return Err(Error::precondition(format!(
                "illegal multiplicity {mult} for edge {{{u}, {v}}}"
            )));
        }
        self.add_vertex(u);
        self.add_vertex(v);
        self.adj.entry(u).or_default().insert(v, mult);
        self.adj.entry(v).or_default().insert(u, mult);
        Ok(())
    }

    /// Raw edge insertion without multiplicity validation. Exists so that
    /// `validate` diagnostics on malformed inputs can be exercised.
    #[doc(hidden)]
    pub fn set_edge_unchecked(&mut self, u: VertexId, v: VertexId, mult: u8) {
        self.add_vertex(u);
        self.add_vertex(v);
        self.adj.entry(u).or_default().insert(v, mult);
        self.adj.entry(v).or_default().insert(u, mult);
    }

    /// Add one copy of edge {u, v}; copies beyond multiplicity 2 (1 for
    /// loops) are discarded.
    pub fn bump_edge(&mut self, u: VertexId, v: VertexId) {
        let cur = self.edge_mult(u, v);
        let max = if u == v { 1 } else { 2 };
        let next = (cur + 1).min(max);
        self.set_edge(u, v, next)
            .expect("capped multiplicity is legal");
    }

    /// Make {u, v} present as a simple edge, leaving existing multiplicity
    /// alone.
    pub fn ensure_edge(&mut self, u: VertexId, v: VertexId) {
        if self.edge_mult(u, v) == 0 {
            self.set_edge(u, v, 1).expect("single edge is legal");
        }
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if let Some(m) = self.adj.get_mut(&u) {
            m.remove(&v);
        }
        if let Some(m) = self.adj.get_mut(&v) {
            m.remove(&u);
        }
    }

    pub fn edge_mult(&self, u: VertexId, v: VertexId) -> u8 {
        self.adj
            .get(&u)
            .and_then(|m| m.get(&v))
            .copied()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_mult(u, v) > 0
    }

    pub fn has_loop(&self, v: VertexId) -> bool {
        self.edge_mult(v, v) > 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.verts
    }

    pub fn num_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.verts.iter().next_back().copied()
    }

    /// Smallest id strictly larger than every existing id.
    pub fn fresh_id(&self) -> VertexId {
        self.max_id().map_or(0, |m| m + 1)
    }

    /// Canonical edge iterator: (u, v, mult) with u <= v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u8)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, m)| m.iter().map(move |(&v, &mult)| (u, v, mult)))
            .filter(|&(u, v, _)| u <= v)
    }

    /// Number of distinct edges (a double edge counts once, a loop once).
    pub fn num_edge_keys(&self) -> usize {
        self.edges().count()
    }

    /// Total multiplicity over all edges.
    pub fn num_edge_slots(&self) -> usize {
        self.edges().map(|(_, _, m)| m as usize).sum()
    }

    /// Neighbors of v including a possible loop entry (v, 1).
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u8)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|m| m.iter().map(|(&u, &mult)| (u, mult)))
    }

    /// Neighbors of v other than v itself.
    pub fn open_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbors(v)
            .filter(move |&(u, _)| u != v)
            .map(|(u, _)| u)
    }

    pub fn open_neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.open_neighbors(v).collect()
    }

    /// Number of incident edge ends: multiplicities summed, a loop counts 2.
    pub fn degree_slots(&self, v: VertexId) -> usize {
        self.neighbors(v)
            .map(|(u, m)| if u == v { 2 } else { m as usize })
            .sum()
    }

    /// Number of distinct neighbors other than v.
    pub fn degree(&self, v: VertexId) -> usize {
        self.open_neighbors(v).count()
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.neighbors(v).next().is_none()
    }

    pub fn is_simple(&self) -> bool {
        self.edges().all(|(u, v, m)| u != v && m == 1)
    }

    pub fn induced(&self, verts: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in verts {
            if self.has_vertex(v) {
                g.add_vertex(v);
            }
        }
        for (u, v, m) in self.edges() {
            if verts.contains(&u) && verts.contains(&v) {
                g.set_edge_unchecked(u, v, m);
            }
        }
        g
    }

    /// The graph minus a vertex set.
    pub fn without(&self, verts: &BTreeSet<VertexId>) -> Graph {
        let keep: BTreeSet<VertexId> = self.verts.difference(verts).copied().collect();
        self.induced(&keep)
    }

    /// Connected components, each as an ascending vertex set, ordered by
    /// smallest contained id.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if !comp.insert(u) {
                    continue;
                }
                seen.insert(u);
                for w in self.open_neighbors(u) {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// No edges at all (loops included).
    pub fn is_independent(&self) -> bool {
        self.edges().next().is_none()
    }

    /// Acyclic in the multigraph sense: no loops, no double edges, and no
    /// cycle among distinct edges.
    pub fn is_forest(&self) -> bool {
        if self.edges().any(|(u, v, m)| u == v || m > 1) {
            return false;
        }
        // |E| = |V| - #components characterizes forests.
        let comps = self.components().len();
        self.num_edge_keys() + comps == self.num_vertices()
    }

    pub fn is_tree(&self) -> bool {
        self.num_vertices() >= 1 && self.is_forest() && self.is_connected()
    }

    /// Every component is a clique (simple graphs).
    pub fn is_cluster(&self) -> bool {
        self.is_simple()
            && self.components().iter().all(|c| {
                let k = c.len();
                let inner = self
                    .edges()
                    .filter(|(u, v, _)| c.contains(u) && c.contains(v))
                    .count();
                inner == k * (k - 1) / 2
            })
    }
}

/// Membership class for the modulated part of a boundaried graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TargetClass {
    #[default]
    None,
    Independent,
    Forest,
    Treedepth(u32),
    /// The modulator is a vertex cover; the remainder is an independent set.
    VertexCover,
}

impl TargetClass {
    pub fn is_hereditary(self) -> bool {
        !matches!(self, TargetClass::None)
    }

    /// Whether `g` belongs to the class. Treedepth membership is decided
    /// exactly and is only usable at small scale.
    pub fn contains(self, g: &Graph) -> bool {
        match self {
            TargetClass::None => true,
            TargetClass::Independent | TargetClass::VertexCover => g.is_independent(),
            TargetClass::Forest => g.is_forest(),
            TargetClass::Treedepth(d) => match crate::solvers::treedepth_decompose(g, d, 20) {
                Ok(dec) => dec.is_some(),
                Err(_) => false,
            },
        }
    }
}

/// A graph with a distinguished boundary through which other graphs attach,
/// plus an optional modulator annotation and its target class.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BoundariedGraph {
    pub graph: Graph,
    pub boundary: BTreeSet<VertexId>,
    pub modulator: Option<BTreeSet<VertexId>>,
    pub target_class: TargetClass,
    /// Optional treedepth decomposition of the modulated part, as parent
    /// pointers (roots map to themselves).
    pub td_parents: Option<BTreeMap<VertexId, VertexId>>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, boundary: BTreeSet<VertexId>) -> Self {
        BoundariedGraph {
            graph,
            boundary,
            ..Default::default()
        }
    }

    pub fn with_modulator(mut self, m: BTreeSet<VertexId>, class: TargetClass) -> Self {
        self.modulator = Some(m);
        self.target_class = class;
        self
    }

    /// Non-boundary vertices.
    pub fn rest(&self) -> BTreeSet<VertexId> {
        self.graph
            .vertex_set()
            .difference(&self.boundary)
            .copied()
            .collect()
    }

    /// Boundary united with the modulator, the working boundary after lifting.
    pub fn lifted_set(&self) -> BTreeSet<VertexId> {
        let mut s = self.boundary.clone();
        if let Some(m) = &self.modulator {
            s.extend(m.iter().copied());
        }
        s
    }

    /// The kernels only need the remainder outside boundary plus modulator to
    /// lie in the class; this is that check.
    pub fn modulated_rest_in_class(&self) -> bool {
        let rest = self.graph.without(&self.lifted_set());
        self.target_class.contains(&rest)
    }
}

/// Diagnostics produced by `validate`; these report invariant violations
/// without failing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Diagnostic {
    BoundaryNotSubset(Vec<VertexId>),
    ModulatorNotSubset(Vec<VertexId>),
    /// graph − (boundary ∪ modulator) is outside the target class.
    ModulatorInvalid(TargetClass),
    IllegalMultiplicity(VertexId, VertexId, u8),
    TdParentsInvalid(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::BoundaryNotSubset(vs) => {
                write!(f, "boundary vertices missing from graph: {vs:?}")
            }
            Diagnostic::ModulatorNotSubset(vs) => {
                write!(f, "modulator vertices missing from graph: {vs:?}")
            }
            Diagnostic::ModulatorInvalid(c) => {
                write!(
                    f,
                    "graph minus boundary and modulator is not in class {c:?}"
                )
            }
            Diagnostic::IllegalMultiplicity(u, v, m) => {
                write!(f, "edge {{{u}, {v}}} has illegal multiplicity {m}")
            }
            Diagnostic::TdParentsInvalid(msg) => write!(f, "td decomposition sidecar: {msg}"),
        }
    }
}

/// Report invariant violations of a boundaried graph. Never fails.
pub fn validate(g: &BoundariedGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let missing: Vec<VertexId> = g
        .boundary
        .iter()
        .copied()
        .filter(|v| !g.graph.has_vertex(*v))
        .collect();
    if !missing.is_empty() {
        out.push(Diagnostic::BoundaryNotSubset(missing));
    }
    if let Some(m) = &g.modulator {
        let missing: Vec<VertexId> = m
            .iter()
            .copied()
            .filter(|v| !g.graph.has_vertex(*v))
            .collect();
        if !missing.is_empty() {
            out.push(Diagnostic::ModulatorNotSubset(missing));
        }
    }
    for (u, v, m) in g.graph.edges() {
        if m == 0 || m > 2 || (u == v && m != 1) {
            out.push(Diagnostic::IllegalMultiplicity(u, v, m));
        }
    }
    if g.modulator.is_some() && g.target_class != TargetClass::None && !g.modulated_rest_in_class()
    {
        out.push(Diagnostic::ModulatorInvalid(g.target_class));
    }
    if let Some(par) = &g.td_parents {
        for (&c, &p) in par {
            if !g.graph.has_vertex(c) {
                out.push(Diagnostic::TdParentsInvalid(format!("unknown vertex {c}")));
                break;
            }
            if c != p && !par.contains_key(&p) {
                out.push(Diagnostic::TdParentsInvalid(format!(
                    "parent {p} of {c} has no entry"
                )));
                break;
            }
        }
    }
    out
}

/// Glue two boundaried graphs: disjoint union identifying the vertices of
/// `g.boundary ∩ h.boundary` by id. Non-shared vertices of `h` whose ids
/// collide with vertices of `g` are renamed to fresh ids. An edge present on
/// both sides keeps the larger multiplicity.
pub fn glue(g: &BoundariedGraph, h: &BoundariedGraph) -> Graph {
    let shared: BTreeSet<VertexId> = g.boundary.intersection(&h.boundary).copied().collect();
    let mut out = g.graph.clone();
    let mut next = g
        .graph
        .max_id()
        .unwrap_or(0)
        .max(h.graph.max_id().unwrap_or(0))
        .saturating_add(1);
    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for v in h.graph.vertices() {
        let target = if shared.contains(&v) {
            v
        } else if out.has_vertex(v) {
            let t = next;
            next += 1;
            t
        } else {
            v
        };
        rename.insert(v, target);
        out.add_vertex(target);
    }
    for (u, v, m) in h.graph.edges() {
        let (a, b) = (rename[&u], rename[&v]);
        let cur = out.edge_mult(a, b);
        if m > cur {
            out.set_edge_unchecked(a, b, m);
        }
    }
    out
}

/// Restrict the boundary to a subset; gluing-equivalence at the larger
/// boundary carries over with the same offset.
pub fn shrink_boundary(g: &BoundariedGraph, b: &BTreeSet<VertexId>) -> Result<BoundariedGraph> {
    if !b.is_subset(&g.boundary) {
        return Err(Error::precondition(format!(
            "shrink target {:?} is not a subset of the boundary",
            b
        )));
    }
    let mut out = g.clone();
    out.boundary = b.clone();
    Ok(out)
}

/// Move the modulator into the boundary: both become B ∪ X. The graph is
/// unchanged; the enlarged boundary is itself a valid modulator because the
/// target classes are hereditary.
pub fn lift_modulator_into_boundary(g: &BoundariedGraph) -> Result<BoundariedGraph> {
    let Some(modulator) = &g.modulator else {
        return Err(Error::precondition("lift requires a modulator"));
    };
    if !g.target_class.is_hereditary() {
        return Err(Error::precondition(
            "lift requires a hereditary target class",
        ));
    }
    let lifted: BTreeSet<VertexId> = g.boundary.union(modulator).copied().collect();
    let mut out = g.clone();
    out.boundary = lifted.clone();
    out.modulator = Some(lifted);
    Ok(out)
}

/// Isomorphism of boundaried graphs fixing every boundary vertex by id.
/// Backtracking search; only intended for small instances.
pub fn are_isomorphic_small(g: &BoundariedGraph, h: &BoundariedGraph, cap: usize) -> Result<bool> {
    if g.graph.num_vertices() > cap || h.graph.num_vertices() > cap {
        return Err(Error::OracleCap(format!(
            "isomorphism check capped at {cap} vertices"
        )));
    }
    if g.boundary != h.boundary {
        return Ok(false);
    }
    if g.graph.num_vertices() != h.graph.num_vertices()
        || g.graph.num_edge_slots() != h.graph.num_edge_slots()
        || g.graph.num_edge_keys() != h.graph.num_edge_keys()
    {
        return Ok(false);
    }
    let boundary = &g.boundary;
    // Boundary-boundary adjacency must match exactly.
    for &u in boundary {
        for &v in boundary {
            if u <= v && g.graph.edge_mult(u, v) != h.graph.edge_mult(u, v) {
                return Ok(false);
            }
        }
    }
    let mut deg_g: Vec<usize> = g
        .graph
        .vertices()
        .map(|v| g.graph.degree_slots(v))
        .collect();
    let mut deg_h: Vec<usize> = h
        .graph
        .vertices()
        .map(|v| h.graph.degree_slots(v))
        .collect();
    deg_g.sort_unstable();
    deg_h.sort_unstable();
    if deg_g != deg_h {
        return Ok(false);
    }

    let free_g: Vec<VertexId> = g
        .graph
        .vertices()
        .filter(|v| !boundary.contains(v))
        .collect();
    let free_h: Vec<VertexId> = h
        .graph
        .vertices()
        .filter(|v| !boundary.contains(v))
        .collect();
    if free_g.len() != free_h.len() {
        return Ok(false);
    }

    fn extend(
        g: &Graph,
        h: &Graph,
        free_g: &[VertexId],
        free_h: &[VertexId],
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
        idx: usize,
        boundary: &BTreeSet<VertexId>,
    ) -> bool {
        if idx == free_g.len() {
            return true;
        }
        let a = free_g[idx];
        'cand: for &b in free_h {
            if used.contains(&b) {
                continue;
            }
            if g.degree_slots(a) != h.degree_slots(b) || g.has_loop(a) != h.has_loop(b) {
                continue;
            }
            // Consistency with boundary and already-mapped vertices.
            for &p in boundary {
                if g.edge_mult(a, p) != h.edge_mult(b, p) {
                    continue 'cand;
                }
            }
            for (&x, &y) in map.iter() {
                if g.edge_mult(a, x) != h.edge_mult(b, y) {
                    continue 'cand;
                }
            }
            map.insert(a, b);
            used.insert(b);
            if extend(g, h, free_g, free_h, map, used, idx + 1, boundary) {
                return true;
            }
            map.remove(&a);
            used.remove(&b);
        }
        false
    }

    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    Ok(extend(
        &g.graph, &h.graph, &free_g, &free_h, &mut map, &mut used, 0, boundary,
    ))
}
