use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::solvers::blossom::{general_max_matching, matching_size};

/// Witness for the maximum order of an x-flower: `order` pairwise
/// vertex-disjoint cycles meeting exactly at `center`, together with the
/// deletion set realizing |X| + Σ_C ⌊e(x,C)/2⌋ at that same value.
#[derive(Clone, Debug)]
pub struct FlowerCertificate {
    pub center: VertexId,
    pub order: u32,
    pub deletion_set: BTreeSet<VertexId>,
}

impl FlowerCertificate {
    /// Recompute |X| + Σ_C ⌊e(x,C)/2⌋ against a graph.
    pub fn dual_value(&self, g: &Graph) -> u32 {
        flower_dual_value(g, self.center, &self.deletion_set)
    }
}

pub fn flower_dual_value(g: &Graph, x: VertexId, del: &BTreeSet<VertexId>) -> u32 {
    let mut removed = del.clone();
    removed.insert(x);
    let rest = g.without(&removed);
    let mut value = del.len() as u32;
    for comp in rest.components() {
        let e: u32 = g
            .neighbors(x)
            .filter(|(u, _)| comp.contains(u))
            .map(|(_, m)| m as u32)
            .sum();
        value += e / 2;
    }
    value
}

/// Maximum x-flower order along with a minimizing deletion set. Cycles here
/// are paths between edge slots of x in G − x, so a double edge to u is the
/// 2-cycle using just u; computed by reduction to general matching.
pub fn max_flower(g: &Graph, x: VertexId) -> Result<FlowerCertificate> {
    if !g.has_vertex(x) {
        return Err(Error::precondition(format!("vertex {x} not in graph")));
    }
    if g.has_loop(x) {
        return Err(Error::precondition("flower center must not carry a loop"));
    }
    let order = flower_order(g, x);

    // Self-reducibility: v belongs to some minimizing deletion set iff
    // removing v drops the flower order by one.
    let mut deletion_set = BTreeSet::new();
    let mut current = g.clone();
    let mut p = order;
    let candidates: Vec<VertexId> = g.vertices().filter(|&v| v != x).collect();
    for v in candidates {
        if p == 0 {
            break;
        }
        let mut reduced = current.clone();
        reduced.remove_vertex(v);
        let q = flower_order(&reduced, x);
        if q + 1 == p {
            deletion_set.insert(v);
            current = reduced;
            p = q;
        }
    }
    let cert = FlowerCertificate {
        center: x,
        order,
        deletion_set,
    };
    assert_eq!(
        cert.dual_value(g),
        order,
        "deletion set must realize the flower order"
    );
    Ok(cert)
}

/// Order only: maximum number of vertex-disjoint stub-to-stub paths in
/// G − x, via the doubled-graph matching construction.
pub fn flower_order(g: &Graph, x: VertexId) -> u32 {
    // Base vertices of G - x.
    let base: Vec<VertexId> = g.vertices().filter(|&v| v != x).collect();
    let w = base.len();
    let idx = |v: VertexId| base.binary_search(&v).expect("base vertex");
    // Stubs: one per edge slot of x.
    let mut stub_base: Vec<usize> = Vec::new();
    for (u, m) in g.neighbors(x) {
        if u == x {
            continue;
        }
        for _ in 0..m {
            stub_base.push(idx(u));
        }
    }
    let k = stub_base.len();
    // Node layout: originals 0..w, copies w..2w, stubs 2w..2w+k.
    let n = 2 * w + k;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let connect = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    };
    for (u, v, _) in g.edges() {
        if u == x || v == x || u == v {
            continue;
        }
        let (iu, iv) = (idx(u), idx(v));
        connect(iu, iv, &mut adj);
        // copies inherit the original's neighborhood
        connect(w + iu, iv, &mut adj);
        connect(w + iv, iu, &mut adj);
    }
    for (si, &b) in stub_base.iter().enumerate() {
        connect(2 * w + si, b, &mut adj);
        connect(2 * w + si, w + b, &mut adj);
    }
    for i in 0..w {
        connect(i, w + i, &mut adj);
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    let matched = general_max_matching(n, &adj);
    matching_size(&matched) as u32 - w as u32
}
