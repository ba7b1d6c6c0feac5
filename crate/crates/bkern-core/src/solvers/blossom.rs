//! Maximum matching in general graphs via blossom contraction, used by the
//! flower-order computation.

/// Returns the partner of each vertex, if matched. O(V^3).
pub fn general_max_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let none = usize::MAX;
    let mut matched = vec![none; n];
    let mut parent = vec![none; n];
    let mut base: Vec<usize> = (0..n).collect();

    fn lca(
        matched: &[usize],
        parent: &[usize],
        base: &[usize],
        mut a: usize,
        mut b: usize,
    ) -> usize {
        let none = usize::MAX;
        let mut used = vec![false; matched.len()];
        loop {
            a = base[a];
            used[a] = true;
            if matched[a] == none {
                break;
            }
            a = parent[matched[a]];
        }
        loop {
            b = base[b];
            if used[b] {
                return b;
            }
            b = parent[matched[b]];
        }
    }

    fn mark_path(
        matched: &[usize],
        parent: &mut [usize],
        base: &[usize],
        in_blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            in_blossom[base[v]] = true;
            in_blossom[base[matched[v]]] = true;
            parent[v] = child;
            child = matched[v];
            v = parent[matched[v]];
        }
    }

    fn find_path(
        root: usize,
        n: usize,
        adj: &[Vec<usize>],
        matched: &mut [usize],
        parent: &mut [usize],
        base: &mut [usize],
    ) -> bool {
        let none = usize::MAX;
        for p in parent.iter_mut() {
            *p = none;
        }
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        let mut used = vec![false; n];
        used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if base[v] == base[to] || matched[v] == to {
                    continue;
                }
                if to == root || (matched[to] != none && parent[matched[to]] != none) {
                    // Odd cycle: contract the blossom.
                    let curbase = lca(matched, parent, base, v, to);
                    let mut in_blossom = vec![false; n];
                    mark_path(matched, parent, base, &mut in_blossom, v, curbase, to);
                    mark_path(matched, parent, base, &mut in_blossom, to, curbase, v);
                    for i in 0..n {
                        if in_blossom[base[i]] {
                            base[i] = curbase;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == none {
                    parent[to] = v;
                    if matched[to] == none {
                        // Augment along the found path.
                        let mut u = to;
                        while u != none {
                            let pv = parent[u];
                            let ppv = matched[pv];
                            matched[u] = pv;
                            matched[pv] = u;
                            u = ppv;
                        }
                        return true;
                    }
                    used[matched[to]] = true;
                    queue.push_back(matched[to]);
                }
            }
        }
        false
    }

    for v in 0..n {
        if matched[v] == none {
            find_path(v, n, adj, &mut matched, &mut parent, &mut base);
        }
    }
    matched
        .into_iter()
        .map(|m| if m == none { None } else { Some(m) })
        .collect()
}

pub fn matching_size(m: &[Option<usize>]) -> usize {
    m.iter().filter(|x| x.is_some()).count() / 2
}
