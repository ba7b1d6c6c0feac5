use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::solvers::small::SmallGraph;

/// A rooted forest witnessing treedepth: every graph edge connects an
/// ancestor-descendant pair, and the height equals the claimed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    /// Parent pointer per vertex; roots map to `None`.
    pub parent: BTreeMap<VertexId, Option<VertexId>>,
    pub height: u32,
}

impl TreedepthDecomposition {
    /// Build from child -> parent pairs where roots point to themselves.
    pub fn from_parent_pointers(pairs: &BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let mut parent = BTreeMap::new();
        for (&c, &p) in pairs {
            if c == p {
                parent.insert(c, None);
            } else {
                if !pairs.contains_key(&p) {
                    return Err(Error::precondition(format!(
                        "parent {p} of {c} missing from decomposition"
                    )));
                }
                parent.insert(c, Some(p));
            }
        }
        let dec = TreedepthDecomposition { parent, height: 0 };
        let mut height = 0;
        for &v in dec.parent.keys() {
            height = height.max(dec.depth(v)?);
        }
        Ok(TreedepthDecomposition { height, ..dec })
    }

    pub fn to_parent_pointers(&self) -> BTreeMap<VertexId, VertexId> {
        self.parent
            .iter()
            .map(|(&c, &p)| (c, p.unwrap_or(c)))
            .collect()
    }

    pub fn roots(&self) -> Vec<VertexId> {
        self.parent
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(&v, _)| v)
            .collect()
    }

    /// 1-based depth of a vertex (roots have depth 1).
    pub fn depth(&self, v: VertexId) -> Result<u32> {
        let mut d = 1;
        let mut cur = v;
        let mut steps = 0;
        while let Some(&Some(p)) = self.parent.get(&cur) {
            d += 1;
            cur = p;
            steps += 1;
            if steps > self.parent.len() {
                return Err(Error::precondition("cycle in parent pointers"));
            }
        }
        if !self.parent.contains_key(&cur) {
            return Err(Error::precondition(format!(
                "vertex {v} not in decomposition"
            )));
        }
        Ok(d)
    }

    pub fn ancestors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(&Some(p)) = self.parent.get(&cur) {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn children_map(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut m: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (&c, &p) in &self.parent {
            if let Some(p) = p {
                m.entry(p).or_default().push(c);
            }
        }
        m
    }

    /// Check validity for `g`: same vertex set, consistent heights, and every
    /// edge of `g` joins an ancestor-descendant pair.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let dec_verts: BTreeSet<VertexId> = self.parent.keys().copied().collect();
        if &dec_verts != g.vertex_set() {
            return Err(Error::precondition(
                "decomposition vertex set differs from the graph",
            ));
        }
        let mut height = 0;
        for &v in &dec_verts {
            height = height.max(self.depth(v)?);
        }
        if height != self.height {
            return Err(Error::precondition(format!(
                "claimed height {} but parent map has height {height}",
                self.height
            )));
        }
        for (u, v, _) in g.edges() {
            if u == v {
                continue;
            }
            let au = self.ancestors(u);
            let av = self.ancestors(v);
            if !au.contains(&v) && !av.contains(&u) {
                return Err(Error::precondition(format!(
                    "edge {{{u}, {v}}} is not ancestor-descendant"
                )));
            }
        }
        Ok(())
    }
}

/// Exact treedepth by the recursive definition with memoization over
/// connected vertex subsets; `None` when the treedepth exceeds `budget`.
pub fn treedepth_decompose(
    g: &Graph,
    budget: u32,
    cap: usize,
) -> Result<Option<TreedepthDecomposition>> {
    let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    let mut height = 0u32;
    for comp in g.components() {
        if comp.len() > cap {
            return Err(Error::OracleCap(format!(
                "treedepth component cap {cap} exceeded ({} vertices)",
                comp.len()
            )));
        }
        let sub = g.induced(&comp);
        let sg = SmallGraph::from_graph(&sub)?;
        let mut memo: HashMap<u32, u32> = HashMap::new();
        let full = sg.full_mask();
        let td = td_value(&sg, full, &mut memo);
        if td > budget {
            return Ok(None);
        }
        height = height.max(td);
        build(&sg, full, None, &mut memo, &mut parent);
    }
    Ok(Some(TreedepthDecomposition { parent, height }))
}

fn td_value(sg: &SmallGraph, mask: u32, memo: &mut HashMap<u32, u32>) -> u32 {
    if mask == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&mask) {
        return v;
    }
    let comps = sg.components_in(mask);
    let val = if comps.len() > 1 {
        comps.iter().map(|&c| td_value(sg, c, memo)).max().unwrap()
    } else if edgeless(sg, mask) {
        1
    } else {
        let mut best = u32::MAX;
        let mut scan = mask;
        while scan != 0 {
            let v = scan.trailing_zeros();
            scan &= scan - 1;
            best = best.min(1 + td_value(sg, mask & !(1 << v), memo));
        }
        best
    };
    memo.insert(mask, val);
    val
}

fn edgeless(sg: &SmallGraph, mask: u32) -> bool {
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if sg.adj[v] & mask != 0 || sg.loops & (1 << v) != 0 {
            return false;
        }
    }
    true
}

fn build(
    sg: &SmallGraph,
    mask: u32,
    parent_of_roots: Option<VertexId>,
    memo: &mut HashMap<u32, u32>,
    out: &mut BTreeMap<VertexId, Option<VertexId>>,
) {
    if mask == 0 {
        return;
    }
    let comps = sg.components_in(mask);
    if comps.len() > 1 {
        for c in comps {
            build(sg, c, parent_of_roots, memo, out);
        }
        return;
    }
    if edgeless(sg, mask) {
        let mut scan = mask;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            out.insert(sg.ids[v], parent_of_roots);
        }
        return;
    }
    // Pick the deletion vertex realizing the minimum, smallest id first.
    let mut best_v = usize::MAX;
    let mut best = u32::MAX;
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let val = td_value(sg, mask & !(1 << v), memo);
        if val < best {
            best = val;
            best_v = v;
        }
    }
    out.insert(sg.ids[best_v], parent_of_roots);
    build(sg, mask & !(1 << best_v), Some(sg.ids[best_v]), memo, out);
}

/// Minimum vertex cover of g − forbidden, exponential only in the height of
/// the provided decomposition.
pub fn vc_bounded_td_dp(
    g: &Graph,
    dec: &TreedepthDecomposition,
    forbidden: &BTreeSet<VertexId>,
) -> Result<u32> {
    if !g.is_simple() {
        return Err(Error::precondition(
            "vc_bounded_td_dp expects a simple graph",
        ));
    }
    dec.validate(g)?;
    let children = dec.children_map();

    // Path state: (ancestor, None = deleted, Some(in_cover)).
    fn solve(
        g: &Graph,
        children: &BTreeMap<VertexId, Vec<VertexId>>,
        forbidden: &BTreeSet<VertexId>,
        v: VertexId,
        path: &mut Vec<(VertexId, Option<bool>)>,
    ) -> u64 {
        let kids = children.get(&v).cloned().unwrap_or_default();
        if forbidden.contains(&v) {
            path.push((v, None));
            let sum = kids
                .iter()
                .map(|&c| solve(g, children, forbidden, c, path))
                .sum();
            path.pop();
            return sum;
        }
        // v in the cover
        path.push((v, Some(true)));
        let mut take = 1u64;
        for &c in &kids {
            take = take.saturating_add(solve(g, children, forbidden, c, path));
        }
        path.pop();
        // v not in the cover: every edge up the path must hit a covered
        // ancestor.
        let ok = path
            .iter()
            .all(|&(anc, state)| !g.has_edge(v, anc) || state != Some(false));
        let skip = if ok {
            path.push((v, Some(false)));
            let mut s = 0u64;
            for &c in &kids {
                s = s.saturating_add(solve(g, children, forbidden, c, path));
            }
            path.pop();
            s
        } else {
            u64::MAX
        };
        take.min(skip)
    }

    let mut total = 0u64;
    for root in dec.roots() {
        let mut path = Vec::new();
        total += solve(g, &children, forbidden, root, &mut path);
    }
    Ok(total as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::opt::{opt_exact, OptValue, OracleLimits, Problem};

    fn complete(n: u32) -> Graph {
        let mut g = Graph::with_vertices(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.bump_edge(u, v);
            }
        }
        g
    }

    fn path(n: u32) -> Graph {
        let mut g = Graph::with_vertices(n);
        for v in 0..n.saturating_sub(1) {
            g.bump_edge(v, v + 1);
        }
        g
    }

    #[test]
    fn independent_set_has_height_one() {
        let g = Graph::with_vertices(5);
        let dec = treedepth_decompose(&g, 5, 20).unwrap().unwrap();
        assert_eq!(dec.height, 1);
        dec.validate(&g).unwrap();
    }

    #[test]
    fn complete_graph_height_is_n() {
        let g = complete(4);
        let dec = treedepth_decompose(&g, 10, 20).unwrap().unwrap();
        assert_eq!(dec.height, 4);
        dec.validate(&g).unwrap();
    }

    #[test]
    fn p4_has_height_three() {
        let g = path(4);
        let dec = treedepth_decompose(&g, 10, 20).unwrap().unwrap();
        assert_eq!(dec.height, 3);
        assert!(treedepth_decompose(&g, 2, 20).unwrap().is_none());
    }

    #[test]
    fn dp_matches_oracle_on_k3_chain_decomposition() {
        let g = complete(3);
        let dec = TreedepthDecomposition::from_parent_pointers(
            &[(0u32, 0u32), (1, 0), (2, 1)].into_iter().collect(),
        )
        .unwrap();
        dec.validate(&g).unwrap();
        assert_eq!(vc_bounded_td_dp(&g, &dec, &BTreeSet::new()).unwrap(), 2);
        let edgeless = Graph::with_vertices(4);
        let flat = treedepth_decompose(&edgeless, 1, 20).unwrap().unwrap();
        assert_eq!(
            vc_bounded_td_dp(&edgeless, &flat, &BTreeSet::new()).unwrap(),
            0
        );
    }

    #[test]
    fn dp_matches_oracle_on_random_low_depth_graphs() {
        let mut state = 55u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            // Random graph of treedepth <= 3 on up to 30 vertices: build a
            // forest of height 3 and put edges along root paths only.
            let n = 12 + (next() % 19) as u32;
            let mut g = Graph::with_vertices(n);
            let mut parents: BTreeMap<u32, u32> = BTreeMap::new();
            for v in 0..n {
                let d = next() % 3;
                if v < 3 || d == 0 {
                    parents.insert(v, v);
                } else {
                    let p = (next() % v as u64) as u32;
                    parents.insert(v, p);
                }
            }
            // Flatten chains deeper than 3 by reparenting the deepest
            // vertex to be a root.
            let dec = loop {
                let d = TreedepthDecomposition::from_parent_pointers(&parents).unwrap();
                if d.height <= 3 {
                    break d;
                }
                let worst = (0..n).max_by_key(|&v| (d.depth(v).unwrap(), v)).unwrap();
                parents.insert(worst, worst);
            };
            for v in 0..n {
                for a in dec.ancestors(v) {
                    if next() % 100 < 50 {
                        g.bump_edge(v, a);
                    }
                }
            }
            dec.validate(&g).unwrap();
            let dp = vc_bounded_td_dp(&g, &dec, &BTreeSet::new()).unwrap();
            let mut sum = 0i64;
            for comp in g.components() {
                let sub = g.induced(&comp);
                match opt_exact(Problem::Vc, &sub, &OracleLimits::default()).unwrap() {
                    OptValue::Finite(v) => sum += v,
                    _ => unreachable!(),
                }
            }
            assert_eq!(dp as i64, sum);
        }
    }

    #[test]
    fn forbidden_vertices_are_deleted() {
        let g = complete(3);
        let dec = treedepth_decompose(&g, 5, 20).unwrap().unwrap();
        let forbidden: BTreeSet<u32> = [0u32].into_iter().collect();
        // K3 minus a vertex is a single edge: cover size 1.
        assert_eq!(vc_bounded_td_dp(&g, &dec, &forbidden).unwrap(), 1);
    }
}
