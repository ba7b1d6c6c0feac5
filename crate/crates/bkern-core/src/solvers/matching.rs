use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::VertexId;

/// Bipartite graph over explicit left/right id lists. The same id may appear
/// on both sides; the two occurrences are distinct nodes.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    right_index: BTreeMap<VertexId, usize>,
    left_index: BTreeMap<VertexId, usize>,
}

impl Bipartite {
    pub fn new(left: Vec<VertexId>, right: Vec<VertexId>) -> Self {
        let left_index = left.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let right_index = right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = vec![Vec::new(); left.len()];
        Bipartite {
            left,
            right,
            adj,
            right_index,
            left_index,
        }
    }

    pub fn add_edge(&mut self, l: VertexId, r: VertexId) {
        let li = self.left_index[&l];
        let ri = self.right_index[&r];
        if !self.adj[li].contains(&ri) {
            self.adj[li].push(ri);
            self.adj[li].sort_unstable();
        }
    }

    pub fn has_edge(&self, l: VertexId, r: VertexId) -> bool {
        match (self.left_index.get(&l), self.right_index.get(&r)) {
            (Some(&li), Some(&ri)) => self.adj[li].contains(&ri),
            _ => false,
        }
    }

    pub fn left_neighbors(&self, l: VertexId) -> Vec<VertexId> {
        let li = self.left_index[&l];
        self.adj[li].iter().map(|&ri| self.right[ri]).collect()
    }

    fn transpose(&self) -> Bipartite {
        let mut t = Bipartite::new(self.right.clone(), self.left.clone());
        for (li, nbrs) in self.adj.iter().enumerate() {
            for &ri in nbrs {
                t.add_edge(self.right[ri], self.left[li]);
            }
        }
        t
    }
}

/// A matching as disjoint (left id, right id) pairs, ascending by left id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn right_of(&self) -> BTreeMap<VertexId, VertexId> {
        self.pairs.iter().map(|&(l, r)| (l, r)).collect()
    }

    pub fn left_of(&self) -> BTreeMap<VertexId, VertexId> {
        self.pairs.iter().map(|&(l, r)| (r, l)).collect()
    }

    pub fn matched_left(&self) -> BTreeSet<VertexId> {
        self.pairs.iter().map(|&(l, _)| l).collect()
    }

    pub fn matched_right(&self) -> BTreeSet<VertexId> {
        self.pairs.iter().map(|&(_, r)| r).collect()
    }
}

/// Hopcroft-Karp on index space. Augmenting paths are explored in ascending
/// index order, so the resulting matching is deterministic. Accepts a
/// partial matching and extends it to maximum.
pub(crate) fn hopcroft_karp(
    adj: &[Vec<usize>],
    n_right: usize,
    match_l: &mut [Option<usize>],
    match_r: &mut [Option<usize>],
) {
    let n_left = adj.len();
    debug_assert_eq!(match_l.len(), n_left);
    debug_assert_eq!(match_r.len(), n_right);
    loop {
        // BFS layering from free left vertices.
        let mut dist = vec![u32::MAX; n_left];
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if match_l[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            }
        }
        let mut reachable_free_right = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match match_r[r] {
                    None => reachable_free_right = true,
                    Some(l2) => {
                        if dist[l2] == u32::MAX {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        if !reachable_free_right {
            return;
        }
        // DFS augmentation along the layering.
        fn try_augment(
            l: usize,
            adj: &[Vec<usize>],
            dist: &mut [u32],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
        ) -> bool {
            let d = std::mem::replace(&mut dist[l], u32::MAX);
            for &r in &adj[l] {
                let ok = match match_r[r] {
                    None => true,
                    Some(l2) => dist[l2] == d + 1 && try_augment(l2, adj, dist, match_l, match_r),
                };
                if ok {
                    match_l[l] = Some(r);
                    match_r[r] = Some(l);
                    return true;
                }
            }
            false
        }
        let mut progressed = false;
        for l in 0..n_left {
            if match_l[l].is_none() && dist[l] == 0 {
                progressed |= try_augment(l, adj, &mut dist, match_l, match_r);
            }
        }
        if !progressed {
            return;
        }
    }
}

/// Maximum matching of a bipartite graph; deterministic given input order.
pub fn max_matching(b: &Bipartite) -> Matching {
    let mut match_l = vec![None; b.left.len()];
    let mut match_r = vec![None; b.right.len()];
    hopcroft_karp(&b.adj, b.right.len(), &mut match_l, &mut match_r);
    let pairs = match_l
        .iter()
        .enumerate()
        .filter_map(|(li, &mr)| mr.map(|ri| (b.left[li], b.right[ri])))
        .collect();
    Matching { pairs }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct HallViolator {
    /// Vertices S on the chosen side with |N(S)| < |S|.
    pub witness: Vec<VertexId>,
    /// Their neighborhood on the other side.
    pub neighborhood: Vec<VertexId>,
    /// A maximum matching; it saturates side ∖ S.
    pub matching: Matching,
}

/// `None` when a side-saturating matching exists; otherwise a Hall violator
/// obtained by alternating reachability from unmatched side vertices.
pub fn hall_violator(b: &Bipartite, side: Side) -> Option<HallViolator> {
    match side {
        Side::Right => {
            let t = b.transpose();
            hall_violator(&t, Side::Left).map(|hv| HallViolator {
                witness: hv.witness,
                neighborhood: hv.neighborhood,
                matching: Matching {
                    pairs: {
                        let mut pairs: Vec<(VertexId, VertexId)> =
                            hv.matching.pairs.iter().map(|&(l, r)| (r, l)).collect();
                        pairs.sort_unstable();
                        pairs
                    },
                },
            })
        }
        Side::Left => {
            let mut match_l = vec![None; b.left.len()];
            let mut match_r = vec![None; b.right.len()];
            hopcroft_karp(&b.adj, b.right.len(), &mut match_l, &mut match_r);
            let free: Vec<usize> = (0..b.left.len())
                .filter(|&l| match_l[l].is_none())
                .collect();
            if free.is_empty() {
                return None;
            }
            // Alternating reachability: left -> right via any edge, right ->
            // left via matched edge.
            let mut seen_l = vec![false; b.left.len()];
            let mut seen_r = vec![false; b.right.len()];
            let mut queue: VecDeque<usize> = free.iter().copied().collect();
            for &l in &free {
                seen_l[l] = true;
            }
            while let Some(l) = queue.pop_front() {
                for &r in &b.adj[l] {
                    if seen_r[r] {
                        continue;
                    }
                    seen_r[r] = true;
                    if let Some(l2) = match_r[r] {
                        if !seen_l[l2] {
                            seen_l[l2] = true;
                            queue.push_back(l2);
                        }
                    }
                }
            }
            let witness: Vec<VertexId> = (0..b.left.len())
                .filter(|&l| seen_l[l])
                .map(|l| b.left[l])
                .collect();
            let neighborhood: Vec<VertexId> = (0..b.right.len())
                .filter(|&r| seen_r[r])
                .map(|r| b.right[r])
                .collect();
            debug_assert!(neighborhood.len() < witness.len());
            let pairs = match_l
                .iter()
                .enumerate()
                .filter_map(|(li, &mr)| mr.map(|ri| (b.left[li], b.right[ri])))
                .collect();
            Some(HallViolator {
                witness,
                neighborhood,
                matching: Matching { pairs },
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_bipartite(a: u32, b: u32) -> Bipartite {
        let left: Vec<u32> = (0..a).collect();
        let right: Vec<u32> = (100..100 + b).collect();
        let mut g = Bipartite::new(left.clone(), right.clone());
        for &l in &left {
            for &r in &right {
                g.add_edge(l, r);
            }
        }
        g
    }

    #[test]
    fn k33_perfect_matching() {
        assert_eq!(max_matching(&complete_bipartite(3, 3)).len(), 3);
    }

    #[test]
    fn star_matches_once() {
        let mut g = Bipartite::new(vec![0], vec![1, 2, 3, 4]);
        for r in 1..=4 {
            g.add_edge(0, r);
        }
        assert_eq!(max_matching(&g).len(), 1);
    }

    #[test]
    fn matching_is_maximum_against_brute_force() {
        // pseudo-random sparse bipartite graphs, 8 + 8
        let mut state = 12345u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let left: Vec<u32> = (0..8).collect();
            let right: Vec<u32> = (8..16).collect();
            let mut g = Bipartite::new(left, right);
            let mut edges = Vec::new();
            for l in 0..8u32 {
                for r in 8..16u32 {
                    if next() % 100 < 30 {
                        g.add_edge(l, r);
                        edges.push((l as usize, r as usize - 8));
                    }
                }
            }
            fn brute(edges: &[(usize, usize)], used_l: u16, used_r: u16, i: usize) -> usize {
                if i == edges.len() {
                    return 0;
                }
                let skip = brute(edges, used_l, used_r, i + 1);
                let (l, r) = edges[i];
                if used_l & (1 << l) == 0 && used_r & (1 << r) == 0 {
                    let take = 1 + brute(edges, used_l | (1 << l), used_r | (1 << r), i + 1);
                    return skip.max(take);
                }
                skip
            }
            assert_eq!(max_matching(&g).len(), brute(&edges, 0, 0, 0));
        }
    }

    #[test]
    fn hall_violator_on_k23_right_side() {
        let g = complete_bipartite(2, 3);
        let hv = hall_violator(&g, Side::Right).unwrap();
        assert_eq!(hv.witness.len(), 3);
        assert_eq!(hv.neighborhood.len(), 2);
        assert!(hall_violator(&g, Side::Left).is_none());
    }

    #[test]
    fn violator_neighborhood_is_recounted() {
        let mut state = 777u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let left: Vec<u32> = (0..6).collect();
            let right: Vec<u32> = (6..10).collect();
            let mut g = Bipartite::new(left.clone(), right);
            for l in 0..6u32 {
                for r in 6..10u32 {
                    if next() % 100 < 35 {
                        g.add_edge(l, r);
                    }
                }
            }
            if let Some(hv) = hall_violator(&g, Side::Left) {
                let mut nh: BTreeSet<u32> = BTreeSet::new();
                for &l in &hv.witness {
                    nh.extend(g.left_neighbors(l));
                }
                assert_eq!(nh, hv.neighborhood.iter().copied().collect());
                assert!(nh.len() < hv.witness.len());
                // matching saturates left ∖ witness
                let matched = hv.matching.matched_left();
                for &l in &left {
                    if !hv.witness.contains(&l) {
                        assert!(matched.contains(&l));
                    }
                }
            }
        }
    }
}
