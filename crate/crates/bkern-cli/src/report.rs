use std::collections::BTreeMap;

use bkern_core::kernel::KernelResult;
use serde::Serialize;

/// Per-run kernelization report; key order is fixed by field order.
#[derive(Serialize)]
pub struct RunReport {
    pub problem: String,
    pub parameterization: String,
    pub n_in: usize,
    pub m_in: usize,
    pub n_out: usize,
    pub m_out: usize,
    pub boundary_size: usize,
    pub param_value: usize,
    pub delta: Option<i64>,
    pub rules: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    pub seed: u64,
    pub tool_version: &'static str,
}

impl RunReport {
    pub fn new(
        problem: &str,
        param: &str,
        res: &KernelResult,
        param_value: usize,
        elapsed_ms: Option<u128>,
        seed: u64,
    ) -> Self {
        RunReport {
            problem: problem.to_string(),
            parameterization: param.to_string(),
            n_in: res.stats.n_before,
            m_in: res.stats.m_before,
            n_out: res.stats.n_after,
            m_out: res.stats.m_after,
            boundary_size: res.reduced.boundary.len(),
            param_value,
            delta: res.delta,
            rules: res
                .trace
                .0
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
            elapsed_ms,
            seed,
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }
}
