//! Boundaried graphs and provably safe local preprocessing.
//!
//! A boundaried graph is a graph with a distinguished vertex set through
//! which other graphs may be glued on. The kernels in this crate shrink such
//! graphs while preserving, for every possible attachment, the optimum of a
//! target problem up to a reported integer offset. Exact oracles at desk
//! scale certify that property on generated corpora.

pub mod bkg;
pub mod error;
pub mod graph;
pub mod harness;
pub mod kernel;
pub mod lower_bounds;
pub mod rng;
pub mod solvers;

pub use error::{Error, Result};
pub use graph::{
    are_isomorphic_small, glue, lift_modulator_into_boundary, shrink_boundary, validate,
    BoundariedGraph, Diagnostic, Graph, TargetClass, VertexId,
};
