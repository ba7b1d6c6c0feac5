use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solvers::small::SmallGraph;

/// Problem tags for the exact oracles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Problem {
    Vc,
    Fvs,
    Tds,
    Ds,
    Lc,
    Lp,
    Hc,
    Hp,
    Ce,
    Cvd,
    Mc,
    Deg2Mod,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Goal {
    Min,
    Max,
    Decision,
}

impl Problem {
    pub fn parse(s: &str) -> Option<Problem> {
        Some(match s {
            "vc" => Problem::Vc,
            "fvs" => Problem::Fvs,
            "tds" => Problem::Tds,
            "ds" => Problem::Ds,
            "lc" => Problem::Lc,
            "lp" => Problem::Lp,
            "hc" => Problem::Hc,
            "hp" => Problem::Hp,
            "ce" => Problem::Ce,
            "cvd" => Problem::Cvd,
            "mc" => Problem::Mc,
            "deg2mod" => Problem::Deg2Mod,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Problem::Vc => "vc",
            Problem::Fvs => "fvs",
            Problem::Tds => "tds",
            Problem::Ds => "ds",
            Problem::Lc => "lc",
            Problem::Lp => "lp",
            Problem::Hc => "hc",
            Problem::Hp => "hp",
            Problem::Ce => "ce",
            Problem::Cvd => "cvd",
            Problem::Mc => "mc",
            Problem::Deg2Mod => "deg2mod",
        }
    }

    pub fn goal(self) -> Goal {
        match self {
            Problem::Lc | Problem::Lp | Problem::Mc => Goal::Max,
            Problem::Hc | Problem::Hp => Goal::Decision,
            _ => Goal::Min,
        }
    }

    pub fn is_optimization(self) -> bool {
        self.goal() != Goal::Decision
    }

    /// Loops and double edges are meaningful for fvs and tolerated (but
    /// irrelevant) for hc/hp; every other oracle insists on simple graphs.
    pub fn accepts_multigraphs(self) -> bool {
        matches!(self, Problem::Fvs | Problem::Hc | Problem::Hp)
    }
}

/// Optimum value of a problem on a graph; infeasible minimization is
/// `PlusInfinity`, infeasible maximization `MinusInfinity`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OptValue {
    Finite(i64),
    PlusInfinity,
    MinusInfinity,
}

impl OptValue {
    /// Offset arithmetic: infinities absorb any finite offset.
    pub fn plus(self, delta: i64) -> OptValue {
        match self {
            OptValue::Finite(v) => OptValue::Finite(v + delta),
            inf => inf,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            OptValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for OptValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OptValue::Finite(v) => write!(f, "{v}"),
            OptValue::PlusInfinity => write!(f, "+inf"),
            OptValue::MinusInfinity => write!(f, "-inf"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    pub max_n: usize,
    /// Cluster Editing switches from partition enumeration to bounded
    /// edit-branching above this vertex count.
    pub ce_partition_max: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_n: 18,
            ce_partition_max: 10,
        }
    }
}

impl OracleLimits {
    pub fn with_max_n(max_n: usize) -> Self {
        OracleLimits {
            max_n,
            ..Default::default()
        }
    }
}

/// Hamiltonian-cycle convention on trivial graphs: fewer than 3 vertices
/// means no cycle. Kept in one place so the convention can be flipped.
pub fn ham_cycle_trivial(n: usize) -> Option<bool> {
    if n < 3 {
        Some(false)
    } else {
        None
    }
}

/// Hamiltonian-path convention on trivial graphs: a 1-vertex graph has one,
/// the empty graph has none.
pub fn ham_path_trivial(n: usize) -> Option<bool> {
    match n {
        0 => Some(false),
        1 => Some(true),
        _ => None,
    }
}

pub fn opt_exact(p: Problem, g: &Graph, lim: &OracleLimits) -> Result<OptValue> {
    let sg = SmallGraph::from_graph(g)?;
    opt_exact_small(p, &sg, lim)
}

pub fn opt_exact_small(p: Problem, sg: &SmallGraph, lim: &OracleLimits) -> Result<OptValue> {
    let n = sg.n;
    if n > lim.max_n {
        return Err(Error::OracleCap(format!(
            "{} oracle limited to {} vertices, got {n}",
            p.tag(),
            lim.max_n
        )));
    }
    if !p.accepts_multigraphs() && !sg.is_simple() {
        return Err(Error::precondition(format!(
            "{} oracle requires a simple graph",
            p.tag()
        )));
    }
    if matches!(p, Problem::Lc | Problem::Lp | Problem::Hc | Problem::Hp) && n > 20 {
        return Err(Error::OracleCap("subset DP limited to 20 vertices".into()));
    }
    Ok(match p {
        Problem::Vc => OptValue::Finite(min_vc(sg, sg.full_mask()) as i64),
        Problem::Fvs => OptValue::Finite(min_fvs(sg, sg.full_mask()) as i64),
        Problem::Tds => min_tds(sg),
        Problem::Ds => OptValue::Finite(min_ds(sg) as i64),
        Problem::Lc => {
            longest_cycle(sg).map_or(OptValue::MinusInfinity, |r| OptValue::Finite(r as i64))
        }
        Problem::Lp => {
            if n == 0 {
                OptValue::MinusInfinity
            } else {
                OptValue::Finite(longest_path_vertices(sg) as i64 - 1)
            }
        }
        Problem::Hc => OptValue::Finite(has_ham_cycle(sg) as i64),
        Problem::Hp => OptValue::Finite(has_ham_path(sg) as i64),
        Problem::Ce => OptValue::Finite(min_ce(sg, lim) as i64),
        Problem::Cvd => OptValue::Finite(min_cvd(sg, sg.full_mask()) as i64),
        Problem::Mc => OptValue::Finite(max_cut(sg) as i64),
        Problem::Deg2Mod => {
            let c = (0..n).filter(|&v| sg.adj[v].count_ones() != 2).count();
            OptValue::Finite(c as i64)
        }
    })
}

/// Minimum vertex cover by branching on a maximum-degree vertex, with the
/// closed form for path/cycle leftovers.
pub fn min_vc(sg: &SmallGraph, alive: u32) -> u32 {
    let mut best_v = usize::MAX;
    let mut best_d = 0;
    let mut scan = alive;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = (sg.adj[v] & alive).count_ones();
        if d > best_d {
            best_d = d;
            best_v = v;
        }
    }
    if best_d == 0 {
        return 0;
    }
    if best_d <= 2 {
        let mut total = 0;
        for comp in sg.components_in(alive) {
            let verts = comp.count_ones();
            let mut ends = 0;
            let mut scan = comp;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                ends += (sg.adj[v] & comp).count_ones();
            }
            let edges = ends / 2;
            if edges == 0 {
                continue;
            }
            total += if edges == verts {
                verts.div_ceil(2)
            } else {
                verts / 2
            };
        }
        return total;
    }
    let v = best_v;
    let nv = sg.adj[v] & alive;
    let take_v = 1 + min_vc(sg, alive & !(1 << v));
    let take_n = nv.count_ones() + min_vc(sg, alive & !(nv | (1 << v)));
    take_v.min(take_n)
}

/// Minimum feedback vertex set on multigraphs: looped vertices are forced,
/// double edges are 2-cycles, then branch on a shortest cycle.
pub fn min_fvs(sg: &SmallGraph, alive: u32) -> u32 {
    let mut alive = alive;
    let forced = (sg.loops & alive).count_ones();
    alive &= !sg.loops;
    let mut scan = alive;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let d = sg.double[u] & alive;
        if d != 0 {
            let v = d.trailing_zeros() as usize;
            let without_u = min_fvs(sg, alive & !(1 << u));
            let without_v = min_fvs(sg, alive & !(1 << v));
            return forced + 1 + without_u.min(without_v);
        }
    }
    // Simple part: peel degree <= 1, then branch on a shortest cycle.
    loop {
        let mut changed = false;
        let mut scan = alive;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if (sg.adj[v] & alive).count_ones() <= 1 {
                alive &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let Some(cycle) = shortest_cycle(sg, alive) else {
        return forced;
    };
    let mut best = u32::MAX;
    for &v in &cycle {
        best = best.min(min_fvs(sg, alive & !(1 << v)));
    }
    forced + 1 + best
}

fn shortest_cycle(sg: &SmallGraph, alive: u32) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut scan = alive;
    while scan != 0 {
        let s = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let mut dist = [u32::MAX; 32];
        let mut par = [usize::MAX; 32];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(u) = queue.pop_front() {
            let mut nb = sg.adj[u] & alive;
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if v == par[u] {
                    continue;
                }
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    par[v] = u;
                    queue.push_back(v);
                } else {
                    let cyc = reconstruct_cycle(u, v, &par);
                    if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                        best = Some(cyc);
                    }
                    break 'bfs;
                }
            }
        }
    }
    best
}

fn reconstruct_cycle(u: usize, v: usize, par: &[usize; 32]) -> Vec<usize> {
    let mut chain_u = vec![u];
    let mut x = u;
    while par[x] != usize::MAX {
        x = par[x];
        chain_u.push(x);
    }
    let mut chain_v = Vec::new();
    let mut y = v;
    let meet = loop {
        chain_v.push(y);
        if let Some(pos) = chain_u.iter().position(|&z| z == y) {
            break pos;
        }
        y = par[y];
    };
    let mut cyc = chain_u[..meet].to_vec();
    chain_v.pop(); // meet point already included from chain_u side
    cyc.extend(chain_v.into_iter().rev());
    cyc.push(chain_u[meet]);
    cyc.sort_unstable();
    cyc.dedup();
    cyc
}

/// Minimum tree deletion set: maximize a kept induced tree.
fn min_tds(sg: &SmallGraph) -> OptValue {
    let n = sg.n;
    if n == 0 {
        return OptValue::PlusInfinity;
    }
    let size = 1u64 << n;
    let mut best = 0u32;
    for mask in 1..size {
        let mask = mask as u32;
        let pc = mask.count_ones();
        if pc <= best {
            continue;
        }
        let mut ends = 0;
        let mut scan = mask;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            ends += (sg.adj[v] & mask).count_ones();
        }
        if ends / 2 != pc - 1 {
            continue;
        }
        if sg.components_in(mask).len() == 1 {
            best = pc;
        }
    }
    OptValue::Finite((n as u32 - best) as i64)
}

/// Minimum dominating set via branch and bound on an undominated vertex.
fn min_ds(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    if n == 0 {
        return 0;
    }
    let full = sg.full_mask();
    let closed: Vec<u32> = (0..n).map(|v| sg.adj[v] | (1 << v)).collect();
    let max_cover = closed.iter().map(|c| c.count_ones()).max().unwrap_or(1);

    // Greedy upper bound.
    let mut dom = 0u32;
    let mut ub = 0u32;
    while dom != full {
        let v = (0..n)
            .max_by_key(|&v| ((closed[v] & !dom).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        dom |= closed[v];
        ub += 1;
    }

    fn rec(closed: &[u32], full: u32, max_cover: u32, dominated: u32, taken: u32, best: &mut u32) {
        if dominated == full {
            *best = (*best).min(taken);
            return;
        }
        let und = (full & !dominated).count_ones();
        if taken + und.div_ceil(max_cover) >= *best {
            return;
        }
        // Branch on the undominated vertex with fewest potential dominators.
        let u = {
            let mut best_u = usize::MAX;
            let mut best_c = u32::MAX;
            let mut scan = full & !dominated;
            while scan != 0 {
                let v = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                let c = closed[v].count_ones();
                if c < best_c {
                    best_c = c;
                    best_u = v;
                }
            }
            best_u
        };
        let mut cand = closed[u];
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(
                closed,
                full,
                max_cover,
                dominated | closed[w],
                taken + 1,
                best,
            );
        }
    }

    let mut best = ub;
    rec(&closed, full, max_cover, 0, 0, &mut best);
    best
}

/// Longest cycle length via subset DP with canonical lowest start vertex.
fn longest_cycle(sg: &SmallGraph) -> Option<u32> {
    let n = sg.n;
    if n < 3 {
        return None;
    }
    let size = 1usize << n;
    let mut dp = vec![0u32; size];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    let mut best = None;
    for mask in 1..size {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        let m32 = mask as u32;
        let s = m32.trailing_zeros() as usize;
        let pc = m32.count_ones();
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            if pc >= 3 && sg.adj[v] & (1 << s) != 0 && best.is_none_or(|b| pc > b) {
                best = Some(pc);
            }
            // extend with vertices above the canonical start only
            let mut ext = sg.adj[v] & !m32 & !((1u32 << (s + 1)) - 1);
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    best
}

/// Number of vertices on a longest path (>= 1 for nonempty graphs).
fn longest_path_vertices(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    let size = 1usize << n;
    let mut dp = vec![0u32; size];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1..size {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        let m32 = mask as u32;
        best = best.max(m32.count_ones());
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = sg.adj[v] & !m32;
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    best
}

fn has_ham_cycle(sg: &SmallGraph) -> bool {
    if let Some(t) = ham_cycle_trivial(sg.n) {
        return t;
    }
    let n = sg.n;
    let size = 1usize << n;
    let full = sg.full_mask();
    let mut dp = vec![0u32; size];
    dp[1] = 1; // paths start at vertex 0
    for mask in (1..size).step_by(2) {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        let m32 = mask as u32;
        if m32 == full {
            let mut e = ends;
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                if sg.adj[v] & 1 != 0 {
                    return true;
                }
            }
            continue;
        }
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = sg.adj[v] & !m32;
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                dp[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    false
}

fn has_ham_path(sg: &SmallGraph) -> bool {
    if let Some(t) = ham_path_trivial(sg.n) {
        return t;
    }
    longest_path_vertices(sg) == sg.n as u32
}

/// Cluster editing: partition enumeration with pruning up to the configured
/// size, bounded edit branching on induced P3s beyond.
fn min_ce(sg: &SmallGraph, lim: &OracleLimits) -> u32 {
    if sg.n <= lim.ce_partition_max {
        return ce_partitions(sg);
    }
    let mut adj = sg.adj.clone();
    let cap = (sg.n * (sg.n - 1) / 2) as u32;
    for k in 0..=cap {
        if ce_branch(&mut adj, sg.n, k) {
            return k;
        }
    }
    unreachable!("editing every pair always yields a cluster");
}

fn ce_partitions(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    if n == 0 {
        return 0;
    }
    // Trivial upper bound: delete every edge.
    let ub: u32 = (0..n).map(|v| sg.adj[v].count_ones()).sum::<u32>() / 2;

    fn rec(sg: &SmallGraph, v: usize, groups: &mut Vec<u32>, cost: u32, best: &mut u32) {
        if cost >= *best {
            return;
        }
        if v == sg.n {
            *best = cost;
            return;
        }
        let assigned: u32 = ((1u64 << v) - 1) as u32;
        for gi in 0..groups.len() {
            let inside = groups[gi];
            let add =
                (inside & !sg.adj[v]).count_ones() + (assigned & !inside & sg.adj[v]).count_ones();
            groups[gi] |= 1 << v;
            rec(sg, v + 1, groups, cost + add, best);
            groups[gi] &= !(1u32 << v);
        }
        let add = (assigned & sg.adj[v]).count_ones();
        groups.push(1 << v);
        rec(sg, v + 1, groups, cost + add, best);
        groups.pop();
    }

    let mut best = ub;
    let mut groups = Vec::new();
    rec(sg, 0, &mut groups, 0, &mut best);
    best
}

fn find_p3(adj: &[u32], n: usize, alive: u32) -> Option<(usize, usize, usize)> {
    for v in 0..n {
        if alive & (1 << v) == 0 {
            continue;
        }
        let nb = adj[v] & alive;
        let mut a = nb;
        while a != 0 {
            let u = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = nb & !((1u32 << (u + 1)) - 1);
            while b != 0 {
                let w = b.trailing_zeros() as usize;
                b &= b - 1;
                if adj[u] & (1 << w) == 0 {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

fn ce_branch(adj: &mut [u32], n: usize, k: u32) -> bool {
    let alive = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let Some((u, v, w)) = find_p3(adj, n, alive) else {
        return true;
    };
    if k == 0 {
        return false;
    }
    for (a, b) in [(u, v), (v, w), (u, w)] {
        adj[a] ^= 1 << b;
        adj[b] ^= 1 << a;
        if ce_branch(adj, n, k - 1) {
            adj[a] ^= 1 << b;
            adj[b] ^= 1 << a;
            return true;
        }
        adj[a] ^= 1 << b;
        adj[b] ^= 1 << a;
    }
    false
}

/// Cluster vertex deletion: branch on induced P3s.
fn min_cvd(sg: &SmallGraph, alive: u32) -> u32 {
    let Some((u, v, w)) = find_p3(&sg.adj, sg.n, alive) else {
        return 0;
    };
    let a = min_cvd(sg, alive & !(1 << u));
    let b = min_cvd(sg, alive & !(1 << v));
    let c = min_cvd(sg, alive & !(1 << w));
    1 + a.min(b).min(c)
}

fn max_cut(sg: &SmallGraph) -> u32 {
    let n = sg.n;
    if n <= 1 {
        return 0;
    }
    let mut best = 0;
    for side in 0u32..(1 << (n - 1)) {
        let mut twice = 0;
        for v in 0..n {
            let opposite = if side & (1 << v) != 0 { !side } else { side };
            twice += (sg.adj[v] & opposite & sg.full_mask()).count_ones();
        }
        best = best.max(twice / 2);
    }
    best
}
