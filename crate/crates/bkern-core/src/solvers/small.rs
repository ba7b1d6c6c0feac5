use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Bitmask view of a graph with at most 32 vertices, used by the exact
/// oracles. `ids[i]` is the original vertex id of index `i`.
#[derive(Clone, Debug)]
pub struct SmallGraph {
    pub n: usize,
    pub ids: Vec<VertexId>,
    /// Open adjacency (self excluded), one bit per neighbor index.
    pub adj: Vec<u32>,
    /// Neighbors joined by a double edge.
    pub double: Vec<u32>,
    /// Vertices carrying a loop.
    pub loops: u32,
}

impl SmallGraph {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let n = g.num_vertices();
        if n > 32 {
            return Err(Error::OracleCap(format!("graph with {n} > 32 vertices")));
        }
        let ids: Vec<VertexId> = g.vertices().collect();
        let index = |v: VertexId| ids.binary_search(&v).expect("vertex present");
        let mut adj = vec![0u32; n];
        let mut double = vec![0u32; n];
        let mut loops = 0u32;
        for (u, v, m) in g.edges() {
            if u == v {
                loops |= 1 << index(u);
                continue;
            }
            let (iu, iv) = (index(u), index(v));
            adj[iu] |= 1 << iv;
            adj[iv] |= 1 << iu;
            if m >= 2 {
                double[iu] |= 1 << iv;
                double[iv] |= 1 << iu;
            }
        }
        Ok(SmallGraph {
            n,
            ids,
            adj,
            double,
            loops,
        })
    }

    /// Simple graph straight from bitmasks (test helper and corpus sweeps).
    pub fn from_adj(adj: Vec<u32>) -> Self {
        let n = adj.len();
        SmallGraph {
            n,
            ids: (0..n as u32).collect(),
            adj,
            double: vec![0; n],
            loops: 0,
        }
    }

    pub fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn is_simple(&self) -> bool {
        self.loops == 0 && self.double.iter().all(|&d| d == 0)
    }

    /// Distinct-neighbor degree inside `alive`.
    pub fn deg_in(&self, v: usize, alive: u32) -> u32 {
        (self.adj[v] & alive).count_ones()
    }

    /// Simple edge pairs (u < v) inside `alive`.
    pub fn edges_in(&self, alive: u32) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |u| {
                let mut row = self.adj[u] & alive & !((1u32 << u) | ((1u32 << u) - 1));
                std::iter::from_fn(move || {
                    if row == 0 {
                        return None;
                    }
                    let v = row.trailing_zeros() as usize;
                    row &= row - 1;
                    Some((u, v))
                })
            })
            .filter(move |&(u, _)| alive & (1 << u) != 0)
    }

    /// Connected components of the induced subgraph on `alive`.
    pub fn components_in(&self, alive: u32) -> Vec<u32> {
        let mut rem = alive;
        let mut out = Vec::new();
        while rem != 0 {
            let start = rem.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let v = scan.trailing_zeros() as usize;
                    scan &= scan - 1;
                    grown |= self.adj[v] & alive;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rem &= !comp;
        }
        out
    }

    /// Forest check on `alive` (loops and doubles inside count as cycles).
    pub fn is_forest_in(&self, alive: u32) -> bool {
        if self.loops & alive != 0 {
            return false;
        }
        for v in 0..self.n {
            if alive & (1 << v) != 0 && self.double[v] & alive != 0 {
                return false;
            }
        }
        let mut edges = 0u32;
        for v in 0..self.n {
            if alive & (1 << v) != 0 {
                edges += (self.adj[v] & alive).count_ones();
            }
        }
        edges /= 2;
        let comps = self.components_in(alive).len() as u32;
        edges + comps == alive.count_ones()
    }
}

/// Iterate subsets of `mask` with exactly `k` bits, ascending numerically.
pub fn subsets_of_size(mask: u32, k: u32) -> Vec<u32> {
    let bits: Vec<u32> = (0..32).filter(|b| mask & (1 << b) != 0).collect();
    let n = bits.len() as u32;
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    // Gosper over compressed indices, then expand.
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut comb: u32 = (1 << k) - 1;
    let limit: u32 = 1 << n;
    while comb < limit {
        let mut expanded = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            if comb & (1 << i) != 0 {
                expanded |= 1 << b;
            }
        }
        out.push(expanded);
        // Gosper's hack.
        let c = comb & comb.wrapping_neg();
        let r = comb + c;
        if c == 0 {
            break;
        }
        comb = (((r ^ comb) >> 2) / c) | r;
    }
    out
}
