//! Independent reference enumerators: literal feasibility definitions driven
//! by plain subset / partition / sequence scans. These deliberately share no
//! search logic with `opt_exact` so the two can cross-validate each other.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solvers::opt::{ham_cycle_trivial, ham_path_trivial, OptValue, Problem};
use crate::solvers::small::{subsets_of_size, SmallGraph};

pub fn naive_opt(p: Problem, g: &Graph) -> Result<OptValue> {
    let sg = SmallGraph::from_graph(g)?;
    naive_opt_small(p, &sg)
}

pub fn naive_opt_small(p: Problem, sg: &SmallGraph) -> Result<OptValue> {
    if sg.n > 16 {
        return Err(Error::OracleCap(
            "naive enumerators limited to 16 vertices".into(),
        ));
    }
    if !p.accepts_multigraphs() && !sg.is_simple() {
        return Err(Error::precondition(format!(
            "{} naive enumerator requires a simple graph",
            p.tag()
        )));
    }
    Ok(match p {
        Problem::Vc => scan_min(sg, is_vertex_cover),
        Problem::Fvs => scan_min(sg, is_feedback_set),
        Problem::Tds => scan_min(sg, is_tree_deletion_set),
        Problem::Ds => scan_min(sg, is_dominating_set),
        Problem::Cvd => scan_min(sg, is_cluster_deletion_set),
        Problem::Deg2Mod => scan_min(sg, covers_wrong_degrees),
        Problem::Ce => OptValue::Finite(partition_scan_ce(sg) as i64),
        Problem::Mc => OptValue::Finite(assignment_scan_mc(sg) as i64),
        Problem::Lc => backtrack_longest_cycle(sg)
            .map_or(OptValue::MinusInfinity, |r| OptValue::Finite(r as i64)),
        Problem::Lp => {
            if sg.n == 0 {
                OptValue::MinusInfinity
            } else {
                OptValue::Finite(backtrack_longest_path(sg) as i64 - 1)
            }
        }
        Problem::Hc => OptValue::Finite(
            ham_cycle_trivial(sg.n)
                .unwrap_or_else(|| backtrack_longest_cycle(sg) == Some(sg.n as u32))
                as i64,
        ),
        Problem::Hp => OptValue::Finite(
            ham_path_trivial(sg.n).unwrap_or_else(|| backtrack_longest_path(sg) == sg.n as u32)
                as i64,
        ),
    })
}

/// Smallest subset size whose deletion/selection satisfies `feasible`.
fn scan_min(sg: &SmallGraph, feasible: fn(&SmallGraph, u32) -> bool) -> OptValue {
    let full = sg.full_mask();
    for k in 0..=sg.n as u32 {
        for s in subsets_of_size(full, k) {
            if feasible(sg, s) {
                return OptValue::Finite(k as i64);
            }
        }
    }
    OptValue::PlusInfinity
}

fn is_vertex_cover(sg: &SmallGraph, s: u32) -> bool {
    for v in 0..sg.n {
        if s & (1 << v) != 0 {
            continue;
        }
        if sg.adj[v] & !s & sg.full_mask() != 0 {
            return false;
        }
    }
    true
}

fn is_feedback_set(sg: &SmallGraph, s: u32) -> bool {
    sg.is_forest_in(sg.full_mask() & !s)
}

fn is_tree_deletion_set(sg: &SmallGraph, s: u32) -> bool {
    let kept = sg.full_mask() & !s;
    if kept == 0 {
        return false;
    }
    sg.is_forest_in(kept) && sg.components_in(kept).len() == 1
}

fn is_dominating_set(sg: &SmallGraph, s: u32) -> bool {
    let mut dominated = s;
    let mut scan = s;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        dominated |= sg.adj[v];
    }
    dominated & sg.full_mask() == sg.full_mask()
}

fn is_cluster_deletion_set(sg: &SmallGraph, s: u32) -> bool {
    let kept = sg.full_mask() & !s;
    sg.components_in(kept).iter().all(|&comp| {
        let mut scan = comp;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if sg.adj[v] & comp != comp & !(1 << v) {
                return false;
            }
        }
        true
    })
}

fn covers_wrong_degrees(sg: &SmallGraph, s: u32) -> bool {
    for v in 0..sg.n {
        if s & (1 << v) == 0 && sg.adj[v].count_ones() != 2 {
            return false;
        }
    }
    true
}

/// Cluster editing cost minimized over set partitions enumerated as
/// restricted growth strings.
fn partition_scan_ce(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    if n == 0 {
        return 0;
    }
    let mut label = vec![0u8; n];
    let mut best = u32::MAX;
    loop {
        let mut cost = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                let adjacent = sg.adj[u] & (1 << v) != 0;
                let together = label[u] == label[v];
                if adjacent != together {
                    cost += 1;
                }
            }
        }
        best = best.min(cost);
        // next restricted growth string
        let mut i = n as isize - 1;
        loop {
            if i <= 0 {
                return best;
            }
            let max_prev = label[..i as usize].iter().copied().max().unwrap_or(0);
            if label[i as usize] <= max_prev {
                label[i as usize] += 1;
                for x in label[(i as usize + 1)..].iter_mut() {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn assignment_scan_mc(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    let mut best = 0;
    for side in 0u64..(1u64 << n) {
        let side = side as u32;
        let mut cut = 0;
        for u in 0..n {
            let mut nb = sg.adj[u] & !((1u32 << u) | ((1u32 << u) - 1));
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if (side >> u) & 1 != (side >> v) & 1 {
                    cut += 1;
                }
            }
        }
        best = best.max(cut);
    }
    best
}

fn backtrack_longest_cycle(sg: &SmallGraph) -> Option<u32> {
    let mut best = None;
    fn extend(sg: &SmallGraph, start: usize, last: usize, visited: u32, best: &mut Option<u32>) {
        let len = visited.count_ones();
        if len >= 3 && sg.adj[last] & (1 << start) != 0 && best.is_none_or(|b| len > b) {
            *best = Some(len);
        }
        let mut nb = sg.adj[last] & !visited;
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if v > start {
                extend(sg, start, v, visited | (1 << v), best);
            }
        }
    }
    for s in 0..sg.n {
        extend(sg, s, s, 1 << s, &mut best);
    }
    best
}

fn backtrack_longest_path(sg: &SmallGraph) -> u32 {
    fn extend(sg: &SmallGraph, last: usize, visited: u32, best: &mut u32) {
        *best = (*best).max(visited.count_ones());
        let mut nb = sg.adj[last] & !visited;
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            extend(sg, v, visited | (1 << v), best);
        }
    }
    let mut best = if sg.n > 0 { 1 } else { 0 };
    for s in 0..sg.n {
        extend(sg, s, 1 << s, &mut best);
    }
    best
}
