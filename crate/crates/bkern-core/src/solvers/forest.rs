use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Minimum vertex cover of a forest via leaf-to-root DP.
pub fn vc_forest_dp(g: &Graph) -> Result<u32> {
    if !g.is_simple() || !g.is_forest() {
        return Err(Error::precondition("vc_forest_dp expects a simple forest"));
    }
    let mut visited: BTreeSet<VertexId> = BTreeSet::new();
    let mut total = 0;

    fn solve(
        g: &Graph,
        v: VertexId,
        parent: Option<VertexId>,
        visited: &mut BTreeSet<VertexId>,
    ) -> (u32, u32) {
        visited.insert(v);
        let mut out = 0; // v not in the cover
        let mut inn = 1; // v in the cover
        for u in g.open_neighbors(v) {
            if Some(u) == parent {
                continue;
            }
            let (u_out, u_in) = solve(g, u, Some(v), visited);
            out += u_in;
            inn += u_out.min(u_in);
        }
        (out, inn)
    }

    for root in g.vertices() {
        if visited.contains(&root) {
            continue;
        }
        let (out, inn) = solve(g, root, None, &mut visited);
        total += out.min(inn);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::opt::{opt_exact, OptValue, OracleLimits, Problem};

    fn path(n: u32) -> Graph {
        let mut g = Graph::with_vertices(n);
        for v in 0..n.saturating_sub(1) {
            g.bump_edge(v, v + 1);
        }
        g
    }

    #[test]
    fn paths() {
        assert_eq!(vc_forest_dp(&path(3)).unwrap(), 1);
        assert_eq!(vc_forest_dp(&path(4)).unwrap(), 2);
    }

    #[test]
    fn rejects_cycles() {
        let mut g = path(3);
        g.bump_edge(0, 2);
        assert!(vc_forest_dp(&g).is_err());
    }

    #[test]
    fn agrees_with_oracle_on_random_forest() {
        // One 50-vertex random forest with small components, checked
        // component-wise against the exact oracle.
        let mut g = Graph::with_vertices(50);
        let mut state = 4242u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for v in 1..50u32 {
            let block = v / 10 * 10;
            if v > block && next() % 100 < 80 {
                let p = block + (next() % (v - block) as u64) as u32;
                g.bump_edge(p, v);
            }
        }
        let whole = vc_forest_dp(&g).unwrap();
        let mut sum = 0i64;
        for comp in g.components() {
            let sub = g.induced(&comp);
            match opt_exact(Problem::Vc, &sub, &OracleLimits::default()).unwrap() {
                OptValue::Finite(v) => sum += v,
                _ => unreachable!(),
            }
        }
        assert_eq!(whole as i64, sum);
    }
}
