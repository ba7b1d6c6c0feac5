use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::solvers::matching::{hall_violator, Bipartite, Side};

/// 2-expansion sets: nonempty X' ⊆ X and Y' ⊆ Y with N(Y') = X' and every
/// Z ⊆ X' having at least 2|Z| neighbors in Y'. Requires |Y| >= 2|X| and
/// every Y-vertex to have an X-neighbor; found by doubling each X-vertex and
/// peeling Hall violators.
pub fn expansion_sets(b: &Bipartite) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
    let mut xs: Vec<VertexId> = b.left.clone();
    let mut ys: Vec<VertexId> = b.right.clone();
    if ys.len() < 2 * xs.len() || xs.is_empty() {
        return Err(Error::precondition(
            "expansion requires |Y| >= 2|X| with X nonempty",
        ));
    }
    for &y in &ys {
        let t = transposed_neighbors(b, y);
        if t.is_empty() {
            return Err(Error::precondition(
                "expansion requires every Y-vertex to have an X-neighbor",
            ));
        }
    }
    loop {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::precondition("expansion peeled everything away"));
        }
        // Double each X-vertex; even/odd ids encode the two copies.
        let doubled_left: Vec<VertexId> = (0..2 * xs.len() as u32).collect();
        let mut aux = Bipartite::new(doubled_left, ys.clone());
        for (i, &x) in xs.iter().enumerate() {
            for y in b.left_neighbors(x) {
                if ys.contains(&y) {
                    aux.add_edge(2 * i as u32, y);
                    aux.add_edge(2 * i as u32 + 1, y);
                }
            }
        }
        match hall_violator(&aux, Side::Left) {
            None => {
                // Doubled X saturated: Hall gives the 2|Z| property.
                return Ok((xs, ys));
            }
            Some(hv) => {
                let peel: BTreeSet<VertexId> = hv
                    .witness
                    .iter()
                    .map(|&copy| xs[(copy / 2) as usize])
                    .collect();
                let mut gone_y: BTreeSet<VertexId> = BTreeSet::new();
                for &x in &peel {
                    for y in b.left_neighbors(x) {
                        gone_y.insert(y);
                    }
                }
                xs.retain(|x| !peel.contains(x));
                ys.retain(|y| !gone_y.contains(y));
            }
        }
    }
}

fn transposed_neighbors(b: &Bipartite, y: VertexId) -> Vec<VertexId> {
    b.left
        .iter()
        .copied()
        .filter(|&x| b.has_edge(x, y))
        .collect()
}

/// Exhaustively check the 2|Z| condition; used by tests and rule validation.
pub fn check_two_expansion(b: &Bipartite, xs: &[VertexId], ys: &[VertexId]) -> bool {
    if xs.is_empty() || ys.is_empty() || xs.len() > 20 {
        return false;
    }
    // N(Y') = X'
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for &y in ys {
        for &x in &b.left {
            if b.has_edge(x, y) {
                seen.insert(x);
            }
        }
    }
    if seen != xs.iter().copied().collect() {
        return false;
    }
    for mask in 1u32..(1 << xs.len()) {
        let z: Vec<VertexId> = xs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        let mut nbrs: BTreeSet<VertexId> = BTreeSet::new();
        for &x in &z {
            for y in b.left_neighbors(x) {
                if ys.contains(&y) {
                    nbrs.insert(y);
                }
            }
        }
        if nbrs.len() < 2 * z.len() {
            return false;
        }
    }
    true
}
