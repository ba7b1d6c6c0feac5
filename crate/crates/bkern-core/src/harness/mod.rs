//! Property-based certification that the kernels are boundaried
//! kernelizations: class-respecting instance generators, attachment
//! samplers, and the gluing-equivalence checker.

pub mod mutants;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{glue, BoundariedGraph, Graph, TargetClass, VertexId};
use crate::kernel::{
    fvs::kernelize_fvs_fvs,
    paths::{
        kernelize_hc_hp_deg2, kernelize_hc_hp_vc, kernelize_lc_vc, kernelize_lp_vc, HamVariant,
    },
    vc_fvs::kernelize_vc_fvs,
    vc_td::kernelize_vc_td,
    vc_vc::kernelize_vc_vc,
    KernelResult,
};
use crate::rng::Rng;
use crate::solvers::{opt_exact, Goal, OptValue, OracleLimits, Problem};

/// Parameterization tags accepted by the kernel dispatcher.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamTag {
    Vc,
    Fvs,
    Td(u32),
    Deg2,
    Ce,
    Cvd,
    Tds,
}

impl ParamTag {
    pub fn parse(s: &str) -> Option<ParamTag> {
        Some(match s {
            "vc" => ParamTag::Vc,
            "fvs" => ParamTag::Fvs,
            "deg2" => ParamTag::Deg2,
            "ce" => ParamTag::Ce,
            "cvd" => ParamTag::Cvd,
            "tds" => ParamTag::Tds,
            _ => {
                let d = s.strip_prefix("td:")?.parse::<u32>().ok()?;
                ParamTag::Td(d)
            }
        })
    }

    pub fn tag(&self) -> String {
        match self {
            ParamTag::Vc => "vc".into(),
            ParamTag::Fvs => "fvs".into(),
            ParamTag::Td(d) => format!("td:{d}"),
            ParamTag::Deg2 => "deg2".into(),
            ParamTag::Ce => "ce".into(),
            ParamTag::Cvd => "cvd".into(),
            ParamTag::Tds => "tds".into(),
        }
    }
}

/// Reason a (problem, parameterization) pair is refused: the equivalence
/// relation has too many classes for any polynomial boundaried
/// kernelization.
pub fn ruled_out_reason(problem: Problem, param: &ParamTag) -> Option<&'static str> {
    Some(match (problem, param) {
        (Problem::Ce, ParamTag::Cvd) | (Problem::Ce, ParamTag::Ce) => {
            "cluster editing does not have finite integer index, even on complete graphs"
        }
        (Problem::Mc, ParamTag::Vc) => {
            "maximum cut does not have finite integer index, even with an independent-set remainder"
        }
        (Problem::Tds, ParamTag::Vc) => {
            "tree deletion set does not have finite integer index, even with an independent-set remainder"
        }
        (Problem::Tds, ParamTag::Tds) => {
            "tree deletion set does not have finite integer index, even with a tree remainder"
        }
        (Problem::Lc, ParamTag::Deg2) => {
            "long cycle does not have finite integer index when all remaining vertices have degree two"
        }
        (Problem::Lp, ParamTag::Deg2) => {
            "long path does not have finite integer index when all remaining vertices have degree two"
        }
        (Problem::Ds, ParamTag::Vc) => {
            "dominating set does not have single-exponential integer index with an independent-set remainder"
        }
        _ => return None,
    })
}

/// Dispatch a supported kernelization or refuse the combination.
pub fn run_kernel(problem: Problem, param: &ParamTag, g: &BoundariedGraph) -> Result<KernelResult> {
    if let Some(reason) = ruled_out_reason(problem, param) {
        return Err(Error::Unsupported(format!(
            "{}[{}]: {reason}",
            problem.tag(),
            param.tag()
        )));
    }
    match (problem, param) {
        (Problem::Vc, ParamTag::Vc) => kernelize_vc_vc(g),
        (Problem::Vc, ParamTag::Fvs) => kernelize_vc_fvs(g),
        (Problem::Vc, ParamTag::Td(d)) => kernelize_vc_td(g, *d),
        (Problem::Fvs, ParamTag::Fvs) => kernelize_fvs_fvs(g),
        (Problem::Lc, ParamTag::Vc) => kernelize_lc_vc(g),
        (Problem::Lp, ParamTag::Vc) => kernelize_lp_vc(g),
        (Problem::Hc, ParamTag::Vc) => kernelize_hc_hp_vc(g, HamVariant::Cycle),
        (Problem::Hp, ParamTag::Vc) => kernelize_hc_hp_vc(g, HamVariant::Path),
        (Problem::Hc, ParamTag::Deg2) => kernelize_hc_hp_deg2(g, HamVariant::Cycle),
        (Problem::Hp, ParamTag::Deg2) => kernelize_hc_hp_deg2(g, HamVariant::Path),
        _ => Err(Error::Unsupported(format!(
            "no kernelization implemented for {}[{}]",
            problem.tag(),
            param.tag()
        ))),
    }
}

/// Campaign configuration; deserializable from the CLI's JSON config files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct FuzzConfig {
    pub problem: String,
    pub param: String,
    pub seed: u64,
    pub instances: u64,
    /// Sampled attachments per instance (structured ones included).
    pub attachments: u64,
    pub max_n: u64,
    pub max_b: u64,
    pub max_k: u64,
    pub max_fresh: u64,
    /// Enumerate all attachments with at most 2 fresh vertices whenever the
    /// instance boundary has at most 2 vertices.
    pub exhaustive_small_boundaries: bool,
    pub oracle_max_n: u64,
    pub workers: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            problem: "vc".into(),
            param: "vc".into(),
            seed: 1,
            instances: 100,
            attachments: 20,
            max_n: 14,
            max_b: 4,
            max_k: 3,
            max_fresh: 6,
            exhaustive_small_boundaries: true,
            oracle_max_n: 20,
            workers: 4,
        }
    }
}

impl FuzzConfig {
    pub fn resolve(&self) -> Result<(Problem, ParamTag)> {
        let p = Problem::parse(&self.problem)
            .ok_or_else(|| Error::precondition(format!("unknown problem {}", self.problem)))?;
        let t = ParamTag::parse(&self.param)
            .ok_or_else(|| Error::precondition(format!("unknown param {}", self.param)))?;
        Ok((p, t))
    }
}

/// Deterministic class-respecting instance generator.
pub fn gen_instance(param: &ParamTag, cfg: &FuzzConfig, index: u64) -> BoundariedGraph {
    let mut rng = Rng::for_index(cfg.seed, index);
    let b = rng.range(0, cfg.max_b) as u32;
    let k = rng.range(0, cfg.max_k) as u32;
    let max_rest = cfg.max_n.saturating_sub((b + k) as u64);
    let mut rest = rng.range(0, max_rest) as u32;
    if matches!(param, ParamTag::Deg2) && k == 0 {
        // Without modulator vertices everything must sit on cycles.
        let m = b + rest;
        if m > 0 && m < 3 {
            rest = 3 - b.min(3);
        }
    }
    let n = b + k + rest;
    let boundary: BTreeSet<VertexId> = (0..b).collect();
    let modulator: BTreeSet<VertexId> = (b..b + k).collect();
    let mut g = Graph::with_vertices(n);
    let density = *rng.pick(&[20u64, 50, 80]);
    let r_lo = b + k;

    let mut td_parents = None;
    let class = match param {
        ParamTag::Vc => {
            // Edges must touch boundary ∪ modulator.
            for u in 0..r_lo {
                for v in 0..n {
                    if v != u && !(v < r_lo && v < u) && rng.chance(density, 100) {
                        g.ensure_edge(u, v);
                    }
                }
            }
            TargetClass::VertexCover
        }
        ParamTag::Fvs => {
            for v in (r_lo + 1)..n {
                if rng.chance(75, 100) {
                    let p = r_lo + rng.below((v - r_lo) as u64) as u32;
                    g.bump_edge(p, v);
                }
            }
            for u in 0..r_lo {
                for v in 0..n {
                    if v != u && !(v < r_lo && v < u) && rng.chance(density, 100) {
                        g.ensure_edge(u, v);
                    }
                }
            }
            TargetClass::Forest
        }
        ParamTag::Td(d) => {
            let d = (*d).max(1);
            // Rooted forest of height <= d over the rest; edges only along
            // ancestor chains.
            let mut parent: Vec<Option<u32>> = Vec::new();
            let mut depth: Vec<u32> = Vec::new();
            for i in 0..rest {
                let v = r_lo + i;
                let candidates: Vec<u32> = (0..i).filter(|&j| depth[j as usize] < d).collect();
                if candidates.is_empty() || rng.chance(1, 3) {
                    parent.push(None);
                    depth.push(1);
                } else {
                    let pj = *rng.pick(&candidates);
                    parent.push(Some(r_lo + pj));
                    depth.push(depth[pj as usize] + 1);
                    g.bump_edge(r_lo + pj, v);
                }
            }
            // extra ancestor edges
            for i in 0..rest {
                let v = r_lo + i;
                let mut a = parent[i as usize];
                while let Some(p) = a {
                    if rng.chance(30, 100) {
                        g.ensure_edge(v, p);
                    }
                    a = parent[(p - r_lo) as usize];
                }
            }
            for u in 0..r_lo {
                for v in 0..n {
                    if v != u && !(v < r_lo && v < u) && rng.chance(density, 100) {
                        g.ensure_edge(u, v);
                    }
                }
            }
            if rng.chance(1, 2) {
                let mut map = std::collections::BTreeMap::new();
                for i in 0..rest {
                    let v = r_lo + i;
                    map.insert(v, parent[i as usize].unwrap_or(v));
                }
                td_parents = Some(map);
            }
            TargetClass::Treedepth(d)
        }
        ParamTag::Deg2 => {
            // Boundary-minus-modulator and rest vertices go on chains and
            // cycles; chain ends wire into the modulator. Stragglers that
            // cannot reach degree two are absorbed into the modulator by the
            // repair pass below.
            let strung: Vec<u32> = (0..b).chain(r_lo..n).collect();
            let mut i = 0usize;
            while i < strung.len() {
                let remaining = strung.len() - i;
                let cycle = remaining >= 3 && (k == 0 || rng.chance(1, 3));
                if cycle {
                    let mut len = if k == 0 {
                        remaining
                    } else {
                        (3 + rng.below(3) as usize).min(remaining)
                    };
                    if k == 0 && remaining - len < 3 {
                        len = remaining;
                    }
                    for t in 0..len {
                        g.bump_edge(strung[i + t], strung[i + (t + 1) % len]);
                    }
                    i += len;
                } else if k == 0 {
                    break; // fewer than 3 left without a modulator: repair
                } else {
                    let min_len = if k >= 2 { 1 } else { 2 };
                    let len = (min_len + rng.below(3) as usize).min(remaining);
                    for t in 0..len.saturating_sub(1) {
                        g.bump_edge(strung[i + t], strung[i + t + 1]);
                    }
                    let first = strung[i];
                    let last = strung[i + len - 1];
                    let x1 = b + rng.below(k as u64) as u32;
                    g.bump_edge(first, x1);
                    if len == 1 {
                        if k >= 2 {
                            let x2 = b + ((x1 - b + 1) % k);
                            g.bump_edge(first, x2);
                        }
                        // k == 1 leaves a degree-1 vertex for the repair pass
                    } else {
                        let x2 = b + rng.below(k as u64) as u32;
                        g.bump_edge(last, x2);
                    }
                    i += len;
                }
            }
            for u in b..r_lo {
                for v in (u + 1)..r_lo {
                    if rng.chance(density, 100) {
                        g.bump_edge(u, v);
                    }
                }
            }
            TargetClass::None
        }
        _ => TargetClass::None,
    };

    let mut out = BoundariedGraph::new(g, boundary).with_modulator(modulator, class);
    out.td_parents = td_parents;
    if matches!(param, ParamTag::Deg2) {
        // Repair: everything outside the modulator must have degree exactly
        // 2; anything that slipped is absorbed into the modulator.
        let mut m = out.modulator.take().unwrap_or_default();
        for v in out.graph.vertices() {
            if out.graph.degree(v) != 2 && !m.contains(&v) && !out.boundary.contains(&v) {
                m.insert(v);
            }
        }
        out.modulator = Some(m);
    }
    out
}

/// Structured and random attachments over a boundary. Index 0 is the empty
/// attachment, 1 a boundary clique, 2 a star into the boundary, 3 a path
/// threading it; higher indices sample random graphs.
pub fn gen_attachment(
    boundary: &BTreeSet<VertexId>,
    max_fresh: u64,
    seed: u64,
    index: u64,
) -> BoundariedGraph {
    let mut rng = Rng::for_index(seed ^ 0xa77a_c4e1, index);
    let base = boundary.iter().next_back().map_or(0, |m| m + 1);
    let mut g = Graph::new();
    for &v in boundary {
        g.add_vertex(v);
    }
    let bs: Vec<VertexId> = boundary.iter().copied().collect();
    match index {
        0 => {}
        1 => {
            for (i, &u) in bs.iter().enumerate() {
                for &v in &bs[i + 1..] {
                    g.bump_edge(u, v);
                }
            }
        }
        2 => {
            g.add_vertex(base);
            for &u in &bs {
                g.bump_edge(base, u);
            }
        }
        3 => {
            for (i, w) in bs.windows(2).enumerate() {
                let f = base + i as u32;
                g.add_vertex(f);
                g.bump_edge(w[0], f);
                g.bump_edge(f, w[1]);
            }
        }
        _ => {
            let fresh = rng.range(0, max_fresh) as u32;
            for t in 0..fresh {
                g.add_vertex(base + t);
            }
            let density = *rng.pick(&[20u64, 50, 80]);
            let all: Vec<VertexId> = g.vertices().collect();
            for (i, &u) in all.iter().enumerate() {
                for &v in &all[i + 1..] {
                    if rng.chance(density, 100) {
                        g.bump_edge(u, v);
                    }
                }
            }
        }
    }
    BoundariedGraph::new(g, boundary.clone())
}

/// Every attachment with at most `max_fresh` fresh vertices (all labeled
/// graphs over boundary plus fresh). Only sensible for tiny boundaries.
pub fn exhaustive_attachments(
    boundary: &BTreeSet<VertexId>,
    max_fresh: u32,
) -> Vec<BoundariedGraph> {
    let base = boundary.iter().next_back().map_or(0, |m| m + 1);
    let mut out = Vec::new();
    for fresh in 0..=max_fresh {
        let verts: Vec<VertexId> = boundary
            .iter()
            .copied()
            .chain((0..fresh).map(|t| base + t))
            .collect();
        let pairs: Vec<(VertexId, VertexId)> = verts
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| verts[i + 1..].iter().map(move |&v| (u, v)))
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let mut g = Graph::new();
            for &v in &verts {
                g.add_vertex(v);
            }
            for (pi, &(u, v)) in pairs.iter().enumerate() {
                if mask & (1 << pi) != 0 {
                    g.bump_edge(u, v);
                }
            }
            out.push(BoundariedGraph::new(g, boundary.clone()));
        }
    }
    out
}

/// The attachment battery for one instance.
pub fn attachments_for(g: &BoundariedGraph, cfg: &FuzzConfig) -> Vec<BoundariedGraph> {
    let mut out = Vec::new();
    if cfg.exhaustive_small_boundaries && g.boundary.len() <= 2 {
        out.extend(exhaustive_attachments(
            &g.boundary,
            2.min(cfg.max_fresh as u32),
        ));
    }
    let mut index = 0u64;
    while (out.len() as u64) < cfg.attachments || index < 4 {
        out.push(gen_attachment(&g.boundary, cfg.max_fresh, cfg.seed, index));
        index += 1;
        if index > cfg.attachments + 8 {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureWitness {
    pub attachment: String,
    pub original_opt: String,
    pub reduced_opt: String,
    pub delta: Option<i64>,
    pub minimized_attachment: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub instance: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureWitness>,
}

fn values_agree(problem: Problem, original: OptValue, reduced: OptValue, delta: i64) -> bool {
    match problem.goal() {
        Goal::Decision => original == reduced,
        _ => original == reduced.plus(delta),
    }
}

/// Compare optima of the original and the reduced instance over every
/// attachment; on mismatch, greedily shrink the attachment and report the
/// minimal witness.
pub fn check_equivalence(
    problem: Problem,
    original: &BoundariedGraph,
    result: &KernelResult,
    attachments: &[BoundariedGraph],
    lim: &OracleLimits,
    instance: u64,
) -> Result<EquivalenceVerdict> {
    let delta = result.delta.unwrap_or(0);
    for att in attachments {
        let v1 = opt_exact(problem, &glue(original, att), lim)?;
        let v2 = opt_exact(problem, &glue(&result.reduced, att), lim)?;
        if values_agree(problem, v1, v2, delta) {
            continue;
        }
        // Shrink the witness while the mismatch persists.
        let mut small = att.clone();
        loop {
            let mut improved = false;
            let rest: Vec<VertexId> = small.rest().into_iter().collect();
            for v in rest {
                let mut cand = small.clone();
                cand.graph.remove_vertex(v);
                if mismatch_persists(problem, original, result, &cand, delta, lim)? {
                    small = cand;
                    improved = true;
                }
            }
            let edges: Vec<(VertexId, VertexId)> =
                small.graph.edges().map(|(u, v, _)| (u, v)).collect();
            for (u, v) in edges {
                let mut cand = small.clone();
                cand.graph.remove_edge(u, v);
                if mismatch_persists(problem, original, result, &cand, delta, lim)? {
                    small = cand;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        return Ok(EquivalenceVerdict {
            instance,
            pass: false,
            error: None,
            failure: Some(FailureWitness {
                attachment: crate::bkg::write_bkg(att),
                original_opt: v1.to_string(),
                reduced_opt: v2.to_string(),
                delta: result.delta,
                minimized_attachment: crate::bkg::write_bkg(&small),
            }),
        });
    }
    Ok(EquivalenceVerdict {
        instance,
        pass: true,
        error: None,
        failure: None,
    })
}

fn mismatch_persists(
    problem: Problem,
    original: &BoundariedGraph,
    result: &KernelResult,
    att: &BoundariedGraph,
    delta: i64,
    lim: &OracleLimits,
) -> Result<bool> {
    let v1 = opt_exact(problem, &glue(original, att), lim)?;
    let v2 = opt_exact(problem, &glue(&result.reduced, att), lim)?;
    Ok(!values_agree(problem, v1, v2, delta))
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub problem: String,
    pub param: String,
    pub seed: u64,
    pub instances: u64,
    pub failures: u64,
    pub verdicts: Vec<EquivalenceVerdict>,
}

/// Run a full campaign: generate, kernelize, and check every instance.
/// Instances are processed by a worker pool but reported in index order.
pub fn run_campaign(cfg: &FuzzConfig) -> Result<CampaignReport> {
    let (problem, param) = cfg.resolve()?;
    let lim = OracleLimits::with_max_n(cfg.oracle_max_n as usize);
    let n = cfg.instances;
    let workers = cfg.workers.clamp(1, 64) as usize;
    let mut verdicts: Vec<Option<EquivalenceVerdict>> = vec![None; n as usize];

    let next = std::sync::atomic::AtomicU64::new(0);
    let slots: Vec<std::sync::Mutex<Option<EquivalenceVerdict>>> =
        (0..n).map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if index >= n {
                    return;
                }
                let verdict = check_one(problem, &param, cfg, &lim, index);
                *slots[index as usize].lock().unwrap() = Some(verdict);
            });
        }
    });
    for (i, slot) in slots.into_iter().enumerate() {
        verdicts[i] = slot.into_inner().unwrap();
    }
    let verdicts: Vec<EquivalenceVerdict> = verdicts.into_iter().flatten().collect();
    let failures = verdicts.iter().filter(|v| !v.pass).count() as u64;
    Ok(CampaignReport {
        problem: cfg.problem.clone(),
        param: cfg.param.clone(),
        seed: cfg.seed,
        instances: n,
        failures,
        verdicts,
    })
}

fn check_one(
    problem: Problem,
    param: &ParamTag,
    cfg: &FuzzConfig,
    lim: &OracleLimits,
    index: u64,
) -> EquivalenceVerdict {
    let g = gen_instance(param, cfg, index);
    let result = match run_kernel(problem, param, &g) {
        Ok(r) => r,
        Err(e) => {
            return EquivalenceVerdict {
                instance: index,
                pass: false,
                error: Some(format!("kernel failed: {e}")),
                failure: None,
            }
        }
    };
    let attachments = attachments_for(&g, cfg);
    match check_equivalence(problem, &g, &result, &attachments, lim, index) {
        Ok(v) => v,
        Err(e) => EquivalenceVerdict {
            instance: index,
            pass: false,
            error: Some(format!("oracle failed: {e}")),
            failure: None,
        },
    }
}
