//! Boundaried kernelizations. Each kernel takes a boundaried graph with a
//! modulator annotation, shrinks it while preserving gluing-equivalence for
//! its problem, and reports the solution-mass offset it removed.

pub mod fvs;
pub mod paths;
pub mod vc_fvs;
pub mod vc_td;
pub mod vc_vc;

use std::collections::BTreeMap;

use crate::graph::BoundariedGraph;

/// Output of a boundaried kernelization: the reduced graph over the original
/// boundary, the offset (absent for decision problems), the rule trace, and
/// before/after sizes.
#[derive(Clone, Debug)]
pub struct KernelResult {
    pub reduced: BoundariedGraph,
    /// OPT(input ⊕ H) = OPT(reduced ⊕ H) + delta for every attachment H.
    pub delta: Option<i64>,
    pub trace: Trace,
    pub stats: KernelStats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace(pub BTreeMap<&'static str, usize>);

impl Trace {
    pub fn bump(&mut self, rule: &'static str, count: usize) {
        if count > 0 {
            *self.0.entry(rule).or_insert(0) += count;
        }
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn merge(&mut self, other: &Trace) {
        for (rule, count) in &other.0 {
            *self.0.entry(rule).or_insert(0) += count;
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KernelStats {
    pub n_before: usize,
    pub m_before: usize,
    pub n_after: usize,
    pub m_after: usize,
    /// Size of the working boundary after modulator lifting (and, for the
    /// forest kernel, perfect-matching cleanup).
    pub lifted_boundary: usize,
    /// Pendant marker leaves added by the forest kernel.
    pub special_leaves: usize,
}

impl KernelStats {
    pub fn before(g: &BoundariedGraph) -> Self {
        KernelStats {
            n_before: g.graph.num_vertices(),
            m_before: g.graph.num_edge_slots(),
            ..Default::default()
        }
    }

    pub fn finish(mut self, g: &BoundariedGraph) -> Self {
        self.n_after = g.graph.num_vertices();
        self.m_after = g.graph.num_edge_slots();
        self
    }
}
