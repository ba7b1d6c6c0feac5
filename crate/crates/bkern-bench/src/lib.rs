//! Shared instance builders for the benchmark suite.

use bkern_core::harness::{gen_instance, FuzzConfig, ParamTag};
use bkern_core::BoundariedGraph;

/// One deterministic instance per parameterization at a chosen scale.
pub fn bench_instance(param: &ParamTag, max_n: u64, index: u64) -> BoundariedGraph {
    let cfg = FuzzConfig {
        seed: 0xbe9c,
        max_n,
        max_b: 4,
        max_k: 3,
        ..Default::default()
    };
    gen_instance(param, &cfg, index)
}
