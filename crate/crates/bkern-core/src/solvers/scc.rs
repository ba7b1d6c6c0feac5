/// Directed graph on indices 0..n.
#[derive(Clone, Debug)]
pub struct Digraph {
    pub n: usize,
    pub out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if !self.out[u].contains(&v) {
            self.out[u].push(v);
            self.out[u].sort_unstable();
        }
    }
}

struct TarjanState {
    index: usize,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

/// Tarjan SCC; components are emitted in reverse topological order of the
/// condensation, each sorted ascending.
pub fn tarjan_scc(d: &Digraph) -> Vec<Vec<usize>> {
    let mut state = TarjanState {
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; d.n],
        idx: vec![None; d.n],
        low: vec![0; d.n],
        comps: Vec::new(),
    };
    for v in 0..d.n {
        if state.idx[v].is_none() {
            strongconnect(v, d, &mut state);
        }
    }
    for c in &mut state.comps {
        c.sort_unstable();
    }
    state.comps
}

fn strongconnect(v: usize, d: &Digraph, state: &mut TarjanState) {
    state.idx[v] = Some(state.index);
    state.low[v] = state.index;
    state.index += 1;
    state.stack.push(v);
    state.on_stack[v] = true;

    for &w in &d.out[v] {
        if state.idx[w].is_none() {
            strongconnect(w, d, state);
            state.low[v] = state.low[v].min(state.low[w]);
        } else if state.on_stack[w] {
            state.low[v] = state.low[v].min(state.idx[w].unwrap());
        }
    }

    if state.low[v] == state.idx[v].unwrap() {
        let mut comp = Vec::new();
        loop {
            let w = state.stack.pop().expect("stack underflow");
            state.on_stack[w] = false;
            comp.push(w);
            if w == v {
                break;
            }
        }
        state.comps.push(comp);
    }
}

/// Strongly connected components with no outgoing edges, ordered by smallest
/// member index.
pub fn tail_sccs(d: &Digraph) -> Vec<Vec<usize>> {
    let comps = tarjan_scc(d);
    let mut comp_of = vec![usize::MAX; d.n];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let mut tails: Vec<Vec<usize>> = comps
        .iter()
        .enumerate()
        .filter(|(ci, comp)| {
            comp.iter()
                .all(|&v| d.out[v].iter().all(|&w| comp_of[w] == *ci))
        })
        .map(|(_, comp)| comp.clone())
        .collect();
    tails.sort_by_key(|c| c[0]);
    tails
}
