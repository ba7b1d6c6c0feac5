//! Deliberately broken kernel variants for checker soundness tests: each
//! mutant must be caught by the gluing-equivalence harness.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::{BoundariedGraph, Graph, TargetClass, VertexId};
use crate::harness::ParamTag;
use crate::kernel::paths::HamVariant;
use crate::kernel::vc_fvs::{Conf1Opts, Conf2Opts, VcFvsOpts};
use crate::kernel::vc_vc::{find_crown, rr_remove_isolated, CrownMarks};
use crate::kernel::{KernelResult, KernelStats, Trace};
use crate::solvers::Problem;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mutant {
    /// Reports offset 1 although the crown kernel never removes mass.
    VcVcWrongDelta,
    /// Deletes one boundary vertex from the output.
    VcVcDropBoundaryVertex,
    /// Crown rule deletes the matching edges along with the rest.
    VcVcCrownDeletesMatching,
    /// The pair rule charges 2 instead of 1.
    VcFvsConf1ExtraDelta,
    /// The pair rule forgets the joining edge between the surviving
    /// neighbors.
    VcFvsConf1SkipJoin,
    /// The quad rule forgets the boundary-adjacency inheritance.
    VcFvsConf2SkipInherit,
    /// Deleting a conflict-free component without counting its optimum.
    VcFvsComponentForgetsDelta,
    /// The flower rule removes the petals but forgets the loop.
    FvsFlowerNoLoop,
    /// The long-cycle rule drops the fixed 4-cycle witness.
    LcDropWitnessCycle,
    /// Emits the NO replacement even for small instances.
    HcAlwaysGadget,
}

pub const ALL_MUTANTS: [Mutant; 10] = [
    Mutant::VcVcWrongDelta,
    Mutant::VcVcDropBoundaryVertex,
    Mutant::VcVcCrownDeletesMatching,
    Mutant::VcFvsConf1ExtraDelta,
    Mutant::VcFvsConf1SkipJoin,
    Mutant::VcFvsConf2SkipInherit,
    Mutant::VcFvsComponentForgetsDelta,
    Mutant::FvsFlowerNoLoop,
    Mutant::LcDropWitnessCycle,
    Mutant::HcAlwaysGadget,
];

impl Mutant {
    pub fn problem_param(&self) -> (Problem, ParamTag) {
        match self {
            Mutant::VcVcWrongDelta
            | Mutant::VcVcDropBoundaryVertex
            | Mutant::VcVcCrownDeletesMatching => (Problem::Vc, ParamTag::Vc),
            Mutant::VcFvsConf1ExtraDelta
            | Mutant::VcFvsConf1SkipJoin
            | Mutant::VcFvsConf2SkipInherit
            | Mutant::VcFvsComponentForgetsDelta => (Problem::Vc, ParamTag::Fvs),
            Mutant::FvsFlowerNoLoop => (Problem::Fvs, ParamTag::Fvs),
            Mutant::LcDropWitnessCycle => (Problem::Lc, ParamTag::Vc),
            Mutant::HcAlwaysGadget => (Problem::Hc, ParamTag::Vc),
        }
    }

    pub fn run(&self, g: &BoundariedGraph) -> Result<KernelResult> {
        match self {
            Mutant::VcVcWrongDelta => {
                let mut res = crate::kernel::vc_vc::kernelize_vc_vc(g)?;
                res.delta = Some(1);
                Ok(res)
            }
            Mutant::VcVcDropBoundaryVertex => {
                let mut res = crate::kernel::vc_vc::kernelize_vc_vc(g)?;
                if let Some(&v) = res.reduced.boundary.iter().next_back() {
                    res.reduced.graph.remove_vertex(v);
                    res.reduced.boundary.remove(&v);
                }
                Ok(res)
            }
            Mutant::VcVcCrownDeletesMatching => mutant_crown_deletes_matching(g),
            Mutant::VcFvsConf1ExtraDelta => crate::kernel::vc_fvs::kernelize_vc_fvs_opts(
                g,
                &VcFvsOpts {
                    conf1: Conf1Opts {
                        delta: 2,
                        ..Default::default()
                    },
                    ..Default::default()
                },
            ),
            Mutant::VcFvsConf1SkipJoin => crate::kernel::vc_fvs::kernelize_vc_fvs_opts(
                g,
                &VcFvsOpts {
                    conf1: Conf1Opts {
                        add_joining_edge: false,
                        ..Default::default()
                    },
                    ..Default::default()
                },
            ),
            Mutant::VcFvsConf2SkipInherit => crate::kernel::vc_fvs::kernelize_vc_fvs_opts(
                g,
                &VcFvsOpts {
                    conf2: Conf2Opts {
                        inherit_boundary: false,
                        ..Default::default()
                    },
                    ..Default::default()
                },
            ),
            Mutant::VcFvsComponentForgetsDelta => crate::kernel::vc_fvs::kernelize_vc_fvs_opts(
                g,
                &VcFvsOpts {
                    component_delta: false,
                    ..Default::default()
                },
            ),
            Mutant::FvsFlowerNoLoop => crate::kernel::fvs::kernelize_fvs_fvs_opts(g, false),
            Mutant::LcDropWitnessCycle => crate::kernel::paths::kernelize_lc_vc_opts(g, false),
            Mutant::HcAlwaysGadget => {
                crate::kernel::paths::kernelize_hc_hp_vc_opts(g, HamVariant::Cycle, true)
            }
        }
    }

    /// A handcrafted instance on which the mutated step actually executes.
    pub fn targeted_instance(&self) -> BoundariedGraph {
        fn bset(vs: &[u32]) -> BTreeSet<u32> {
            vs.iter().copied().collect()
        }
        match self {
            Mutant::VcVcWrongDelta
            | Mutant::VcVcDropBoundaryVertex
            | Mutant::VcVcCrownDeletesMatching => {
                // star: center 0 in the boundary, leaves outside
                let mut g = Graph::with_vertices(5);
                for v in 1..5 {
                    g.bump_edge(0, v);
                }
                BoundariedGraph::new(g, bset(&[0]))
                    .with_modulator(BTreeSet::new(), TargetClass::VertexCover)
            }
            Mutant::VcFvsConf1ExtraDelta | Mutant::VcFvsConf1SkipJoin => {
                // P6 with both path ends adjacent to boundary vertex 0 and a
                // spare boundary vertex 1; ids chosen so the unblockable
                // scan hits the central pair, which has survivors on both
                // sides.
                let mut g = Graph::with_vertices(8);
                g.bump_edge(4, 5);
                g.bump_edge(5, 2);
                g.bump_edge(2, 3);
                g.bump_edge(3, 6);
                g.bump_edge(6, 7);
                g.bump_edge(0, 4);
                g.bump_edge(0, 7);
                BoundariedGraph::new(g, bset(&[0, 1]))
                    .with_modulator(BTreeSet::new(), TargetClass::Forest)
            }
            Mutant::VcFvsConf2SkipInherit => {
                // path t-u-v-w with matched side pairs; modulator vertex 2
                // blocks the side pairs so only the quad rule fires, and
                // vertex 11 gives the pair partners private edges so the
                // skipped inheritance is observable.
                let mut g = Graph::with_vertices(12);
                for (a, b) in [(3, 4), (4, 5), (5, 6), (4, 7), (5, 9), (7, 8), (9, 10)] {
                    g.bump_edge(a, b);
                }
                g.bump_edge(0, 3);
                g.bump_edge(1, 6);
                g.bump_edge(0, 1);
                for v in [7u32, 8, 9, 10] {
                    g.bump_edge(2, v);
                }
                g.bump_edge(11, 8);
                g.bump_edge(11, 10);
                BoundariedGraph::new(g, bset(&[0, 1]))
                    .with_modulator(bset(&[2, 11]), TargetClass::Forest)
            }
            Mutant::VcFvsComponentForgetsDelta => {
                // isolated edge component away from the boundary
                let mut g = Graph::with_vertices(3);
                g.bump_edge(1, 2);
                BoundariedGraph::new(g, bset(&[0]))
                    .with_modulator(BTreeSet::new(), TargetClass::Forest)
            }
            Mutant::FvsFlowerNoLoop => {
                // two triangles sharing boundary vertex 0: flower of order 2
                let mut g = Graph::with_vertices(5);
                for (a, b) in [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)] {
                    g.bump_edge(a, b);
                }
                BoundariedGraph::new(g, bset(&[0]))
                    .with_modulator(BTreeSet::new(), TargetClass::Forest)
            }
            Mutant::LcDropWitnessCycle => {
                // C4 witness {2, 3} over the only boundary pair, plus a twin
                // that grabs the matching, so K matters.
                let mut g = Graph::with_vertices(4);
                for v in [2u32, 3] {
                    g.bump_edge(v, 0);
                    g.bump_edge(v, 1);
                }
                BoundariedGraph::new(g, bset(&[0, 1]))
                    .with_modulator(BTreeSet::new(), TargetClass::VertexCover)
            }
            Mutant::HcAlwaysGadget => {
                // small YES-able instance: one rest vertex adjacent to both
                // boundary vertices
                let mut g = Graph::with_vertices(3);
                g.bump_edge(2, 0);
                g.bump_edge(2, 1);
                BoundariedGraph::new(g, bset(&[0, 1]))
                    .with_modulator(BTreeSet::new(), TargetClass::VertexCover)
            }
        }
    }
}

/// Crown reduction that also deletes the matching edges: unsound because the
/// head's cover mass disappears.
fn mutant_crown_deletes_matching(g: &BoundariedGraph) -> Result<KernelResult> {
    let lifted = {
        let mut h = g.clone();
        h.target_class = TargetClass::VertexCover;
        crate::graph::lift_modulator_into_boundary(&h)?
    };
    let mut work = lifted;
    let stats = KernelStats::before(g);
    let mut trace = Trace::default();
    let mut marks = CrownMarks::default();
    loop {
        trace.bump("vc-iso", rr_remove_isolated(&mut work));
        let Some(crown) = find_crown(&work, &marks) else {
            break;
        };
        let mut deleted = 0;
        for &h in &crown.head {
            let nbrs: Vec<VertexId> = work.graph.open_neighbor_set(h).into_iter().collect();
            for u in nbrs {
                work.graph.remove_edge(h, u);
                deleted += 1;
            }
        }
        trace.bump("vc-crown", usize::from(deleted > 0));
        marks.ind.extend(crown.ind.iter().copied());
        marks.head.extend(crown.head.iter().copied());
    }
    let mut reduced = crate::graph::shrink_boundary(&work, &g.boundary)?;
    reduced.modulator = Some(work.boundary.clone());
    reduced.target_class = TargetClass::VertexCover;
    let stats = stats.finish(&reduced);
    Ok(KernelResult {
        reduced,
        delta: Some(0),
        trace,
        stats,
    })
}
