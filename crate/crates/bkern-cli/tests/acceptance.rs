//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measurements. Run with `cargo test -p bkern-cli --test acceptance`
//! (add `-- --nocapture` to see the lines as they complete).

use std::collections::BTreeSet;
use std::process::Command;

use bkern_core::graph::{glue, BoundariedGraph, VertexId};
use bkern_core::harness::{
    attachments_for, check_equivalence, gen_instance, mutants::ALL_MUTANTS, run_campaign,
    run_kernel, FuzzConfig, ParamTag,
};
use bkern_core::kernel::vc_fvs::{conflict_table, LeafMarks};
use bkern_core::kernel::vc_td::regular_kernel_vc_td;
use bkern_core::lower_bounds::{
    ce_member, demonstrate_ds_index, lc_member, lc_witness, lp_member, lp_witness, mc_member,
    mc_witness, tds_star_member, tds_tree_member, tds_witness, verify_separation, FamilyName,
};
use bkern_core::solvers::{
    max_flower, naive_opt_small, opt_exact, opt_exact_small, OptValue, OracleLimits, Problem,
    SmallGraph,
};

const SUPPORTED: [(&str, &str); 9] = [
    ("vc", "vc"),
    ("vc", "fvs"),
    ("fvs", "fvs"),
    ("lc", "vc"),
    ("lp", "vc"),
    ("hc", "vc"),
    ("hp", "vc"),
    ("hc", "deg2"),
    ("hp", "deg2"),
];

fn family_config(problem: &str, param: &str, instances: u64) -> FuzzConfig {
    let path_problem = matches!(problem, "lc" | "lp" | "hc" | "hp");
    FuzzConfig {
        problem: problem.into(),
        param: param.into(),
        seed: 0xacce,
        instances,
        attachments: 20,
        max_n: if path_problem { 11 } else { 14 },
        max_b: if path_problem { 3 } else { 4 },
        max_k: 3,
        max_fresh: if path_problem { 4 } else { 6 },
        exhaustive_small_boundaries: true,
        // The forest kernel may add marker leaves, so glued graphs can be
        // larger than instance + fresh; branching oracles absorb that.
        oracle_max_n: if path_problem { 20 } else { 28 },
        workers: 8,
    }
}

fn finite(v: OptValue) -> i64 {
    v.finite().expect("finite optimum")
}

#[test]
fn criterion_1_gluing_equivalence_fuzz() {
    let started = std::time::Instant::now();
    let mut total = 0;
    for (problem, param) in SUPPORTED {
        let cfg = family_config(problem, param, 500);
        let report = run_campaign(&cfg).expect("campaign runs");
        assert_eq!(
            report.failures,
            0,
            "{problem}[{param}]: first failure {:?}",
            report.verdicts.iter().find(|v| !v.pass)
        );
        total += report.instances;
    }
    println!(
        "[criterion 1] PASS - gluing equivalence on {total} instances across {} kernelizations ({:?})",
        SUPPORTED.len(),
        started.elapsed()
    );
}

#[test]
fn criterion_2_size_bounds() {
    let started = std::time::Instant::now();
    let mut checked = 0usize;
    // vc[vc]: |V'| <= 2(|B|+k)
    for index in 0..500u64 {
        let cfg = family_config("vc", "vc", 500);
        let g = gen_instance(&ParamTag::Vc, &cfg, index);
        let res = run_kernel(Problem::Vc, &ParamTag::Vc, &g).unwrap();
        let bound = 2 * (g.boundary.len() + g.modulator.as_ref().unwrap().len());
        assert!(
            res.reduced.graph.num_vertices() <= bound.max(2),
            "vc[vc] instance {index}: {} > {bound}",
            res.reduced.graph.num_vertices()
        );
        checked += 1;
    }
    // lc / lp rest bounds, hc/hp total bound
    for (problem, param) in [("lc", "vc"), ("lp", "vc"), ("hc", "vc"), ("hp", "vc")] {
        let cfg = family_config(problem, param, 500);
        let p = Problem::parse(problem).unwrap();
        let t = ParamTag::parse(param).unwrap();
        for index in 0..500u64 {
            let g = gen_instance(&t, &cfg, index);
            let res = run_kernel(p, &t, &g).unwrap();
            let bp = res.stats.lifted_boundary;
            // kernels never delete working-boundary vertices, so the
            // non-boundary remainder is everything beyond it
            let rest = res.reduced.graph.num_vertices() - bp.min(res.reduced.graph.num_vertices());
            match problem {
                "lc" => {
                    assert!(rest <= bp * bp + 2, "lc instance {index}: {rest}");
                }
                "lp" => {
                    // the degenerate guard may keep one isolated vertex
                    // when the working boundary is empty
                    let bound = (bp * bp + bp).max(1);
                    assert!(rest <= bound, "lp instance {index}: {rest}");
                }
                _ => {
                    let n = res.reduced.graph.num_vertices();
                    let bound = (2 * bp + 1).max(g.boundary.len() + 2);
                    assert!(n <= bound, "{problem} instance {index}: {n} > {bound}");
                }
            }
            checked += 1;
        }
    }
    // vc[fvs]: rest <= 14(|B'|^2 + |B'|^3)
    {
        let cfg = family_config("vc", "fvs", 500);
        for index in 0..500u64 {
            let g = gen_instance(&ParamTag::Fvs, &cfg, index);
            let res = run_kernel(Problem::Vc, &ParamTag::Fvs, &g).unwrap();
            let bp = res.stats.lifted_boundary;
            let rest = res.reduced.graph.num_vertices() - bp - res.stats.special_leaves;
            assert!(
                rest <= 14 * (bp * bp + bp * bp * bp),
                "vc[fvs] instance {index}: rest {rest} over bound for |B'| = {bp}"
            );
            checked += 1;
        }
    }
    // fvs[fvs]: |V'| <= 30 (|B|+k)^2
    {
        let cfg = family_config("fvs", "fvs", 500);
        for index in 0..500u64 {
            let g = gen_instance(&ParamTag::Fvs, &cfg, index);
            let res = run_kernel(Problem::Fvs, &ParamTag::Fvs, &g).unwrap();
            let p = (g.boundary.len() + g.modulator.as_ref().unwrap().len()).max(1);
            assert!(
                res.reduced.graph.num_vertices() <= 30 * p * p,
                "fvs[fvs] instance {index}"
            );
            checked += 1;
        }
    }
    // vc[td:d]: |V'| <= 30 (|B|+k)^(2^(d-1)) for d in {2, 3}
    for d in [2u32, 3] {
        let cfg = family_config("vc", &format!("td:{d}"), 500);
        for index in 0..500u64 {
            let g = gen_instance(&ParamTag::Td(d), &cfg, index);
            let res = run_kernel(Problem::Vc, &ParamTag::Td(d), &g).unwrap();
            let p = (g.boundary.len() + g.modulator.as_ref().unwrap().len()).max(1);
            let bound = 30 * p.pow(2u32.pow(d - 1));
            assert!(
                res.reduced.graph.num_vertices() <= bound,
                "vc[td:{d}] instance {index}: {} > {bound}",
                res.reduced.graph.num_vertices()
            );
            checked += 1;
        }
    }
    println!(
        "[criterion 2] PASS - size bounds on {checked} kernel runs, zero violations ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_3_closed_forms() {
    let started = std::time::Instant::now();
    let lim = OracleLimits::with_max_n(20);
    let ce_lim = OracleLimits {
        max_n: 20,
        ce_partition_max: 10,
    };
    let mut checks = 0usize;

    // Cluster editing: OPT(G^i + G^0) = 0 and OPT(G^i + G^j) = j for i > j <= 5.
    for i in 1..=5u64 {
        let gi = ce_member(i);
        assert_eq!(
            finite(opt_exact(Problem::Ce, &glue(&gi, &ce_member(0)), &ce_lim).unwrap()),
            0
        );
        checks += 1;
        for j in 0..i {
            let glued = glue(&gi, &ce_member(j));
            assert_eq!(
                finite(opt_exact(Problem::Ce, &glued, &ce_lim).unwrap()),
                j as i64,
                "ce i={i} j={j}"
            );
            checks += 1;
        }
    }
    // Maximum cut: 2i with the empty witness and j^2 + 2j + i for i < j <= 4.
    for i in 0..=4u64 {
        assert_eq!(
            finite(opt_exact(Problem::Mc, &glue(&mc_member(i), &mc_witness(0)), &lim).unwrap()),
            2 * i as i64
        );
        checks += 1;
        for j in (i + 1)..=4 {
            assert_eq!(
                finite(opt_exact(Problem::Mc, &glue(&mc_member(i), &mc_witness(j)), &lim).unwrap()),
                (j * j + 2 * j + i) as i64,
                "mc i={i} j={j}"
            );
            checks += 1;
        }
    }
    // Tree deletion, star family: OPT(.+H^1) = 1; <= i+1 versus >= j+1.
    for i in 1..=5u64 {
        assert_eq!(
            finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_star_member(i), &tds_witness(1)),
                    &lim
                )
                .unwrap()
            ),
            1
        );
        checks += 1;
        for j in (i + 1)..=5 {
            let h = j + 1;
            if 1 + i + 1 + 2 * h > 18 || 1 + j + 1 + 2 * h > 18 {
                continue; // outside the oracle cap
            }
            let oi = finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_star_member(i), &tds_witness(h)),
                    &lim,
                )
                .unwrap(),
            );
            let oj = finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_star_member(j), &tds_witness(h)),
                    &lim,
                )
                .unwrap(),
            );
            assert!(oi <= i as i64 + 1, "tds-star i={i} h={h}");
            assert!(oj > j as i64, "tds-star j={j} h={h}");
            checks += 2;
        }
    }
    // Tree deletion, tree family: OPT(.+H^1) = 2; <= i+2 versus >= j+2.
    for i in 2..=5u64 {
        if 2 + i + 1 + 2 > 18 {
            continue;
        }
        assert_eq!(
            finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_tree_member(i), &tds_witness(1)),
                    &lim
                )
                .unwrap()
            ),
            2
        );
        checks += 1;
        for j in (i + 1)..=5 {
            let h = j + 2;
            if 2 + i + 1 + 2 * h > 18 || 2 + j + 1 + 2 * h > 18 {
                continue;
            }
            let oi = finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_tree_member(i), &tds_witness(h)),
                    &lim,
                )
                .unwrap(),
            );
            let oj = finite(
                opt_exact(
                    Problem::Tds,
                    &glue(&tds_tree_member(j), &tds_witness(h)),
                    &lim,
                )
                .unwrap(),
            );
            assert!(oi <= i as i64 + 2, "tds-tree i={i} h={h}");
            assert!(oj >= j as i64 + 2, "tds-tree j={j} h={h}");
            checks += 2;
        }
    }
    // Long cycle: 4 with the left closure, i + 4 with the right one.
    for i in 0..=5u64 {
        assert_eq!(
            finite(opt_exact(Problem::Lc, &glue(&lc_member(i), &lc_witness(false)), &lim).unwrap()),
            4
        );
        assert_eq!(
            finite(opt_exact(Problem::Lc, &glue(&lc_member(i), &lc_witness(true)), &lim).unwrap()),
            i as i64 + 4
        );
        checks += 2;
    }
    // Long path: h with the long pendant witness, i + 2 with the empty one.
    for i in 0..=5u64 {
        let h = i + 3;
        assert_eq!(
            finite(opt_exact(Problem::Lp, &glue(&lp_member(i), &lp_witness(h)), &lim).unwrap()),
            h as i64
        );
        assert_eq!(
            finite(opt_exact(Problem::Lp, &glue(&lp_member(i), &lp_witness(0)), &lim).unwrap()),
            i as i64 + 2
        );
        checks += 2;
    }
    // Separation verdicts for all in-cap index pairs.
    let mut separations = 0usize;
    for (name, lo, hi) in [
        (FamilyName::CeCliques, 1u64, 4u64),
        (FamilyName::McBipartite, 0, 4),
        (FamilyName::TdsStar, 1, 4),
        (FamilyName::TdsTree, 2, 4),
        (FamilyName::LcDeg2, 0, 5),
        (FamilyName::LpDeg2, 0, 5),
    ] {
        for i in lo..=hi {
            for j in lo..i {
                if name == FamilyName::TdsTree && 2 + i + 1 + 2 * (i + 2) > 18 {
                    continue;
                }
                let rep = verify_separation(name, i, j, &lim).expect("separation report");
                assert!(rep.separated, "{name:?} i={i} j={j}: {rep:?}");
                separations += 1;
            }
        }
    }
    // Dominating set family: full-witness optimum, bounds, pairwise
    // separation for q up to 4 (the lower bound is a q = 4 statement).
    for q in 2..=4u32 {
        let rep = demonstrate_ds_index(q, &lim).unwrap();
        assert!(rep.full_witness_opt_is_q, "q={q}");
        assert!(rep.upper_bounds_hold, "q={q}");
        assert!(rep.all_pairwise_separated, "q={q}");
        assert_eq!(rep.members, 1 << rep.half_subsets);
        if q == 4 {
            assert!(rep.lower_bounds_hold);
            assert_eq!(rep.members, 64);
            assert_eq!(rep.pairs_checked, 64 * 63 / 2);
            assert_eq!(rep.pairs_separated_by_pendants, rep.pairs_checked);
        }
        checks += 1;
    }
    println!(
        "[criterion 3] PASS - {checks} closed-form values and {separations} separations reproduced exactly ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_4_regular_kernel_derivation() {
    let started = std::time::Instant::now();
    let lim = OracleLimits::with_max_n(20);
    // Empty boundary: the reported offset is exactly OPT(G) - OPT(G').
    let mut checked = 0usize;
    for (problem, param) in [
        ("vc", "vc"),
        ("vc", "fvs"),
        ("fvs", "fvs"),
        ("lc", "vc"),
        ("lp", "vc"),
        ("vc", "td:2"),
    ] {
        let p = Problem::parse(problem).unwrap();
        let t = ParamTag::parse(param).unwrap();
        let cfg = FuzzConfig {
            max_b: 0,
            max_n: 12,
            instances: 100,
            seed: 0xd0_0d,
            ..family_config(problem, param, 100)
        };
        for index in 0..cfg.instances {
            let g = gen_instance(&t, &cfg, index);
            let res = run_kernel(p, &t, &g).unwrap();
            let before = opt_exact(p, &g.graph, &lim).unwrap();
            let after = opt_exact(p, &res.reduced.graph, &lim).unwrap();
            assert_eq!(
                before,
                after.plus(res.delta.unwrap()),
                "{problem}[{param}] instance {index}"
            );
            checked += 1;
        }
    }
    // Regular kernel for vc[td:2]: answers match the oracle, size stays
    // within 30 k^2.
    let cfg = FuzzConfig {
        max_b: 0,
        max_n: 14,
        instances: 200,
        seed: 0x5eed,
        ..family_config("vc", "td:2", 200)
    };
    for index in 0..cfg.instances {
        let g = gen_instance(&ParamTag::Td(2), &cfg, index);
        let modulator = g.modulator.clone().unwrap();
        let opt = finite(opt_exact(Problem::Vc, &g.graph, &lim).unwrap());
        for ell in [opt - 1, opt, opt + 1] {
            if ell < 0 {
                continue;
            }
            let rk = regular_kernel_vc_td(&g.graph, &modulator, 2, ell).unwrap();
            let opt2 = finite(opt_exact(Problem::Vc, &rk.graph, &lim).unwrap());
            assert_eq!(opt <= ell, opt2 <= rk.ell, "instance {index}, ell {ell}");
            let k = modulator.len().max(1);
            assert!(rk.graph.num_vertices() <= 30 * k * k, "instance {index}");
        }
        checked += 1;
    }
    println!(
        "[criterion 4] PASS - offset identity and regular-kernel answers on {checked} instances ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_5_structural_fixpoints() {
    let started = std::time::Instant::now();
    let mut checked = 0usize;
    // vc[vc]: the independent remainder is at most half the output.
    {
        let cfg = family_config("vc", "vc", 400);
        for index in 0..cfg.instances {
            let g = gen_instance(&ParamTag::Vc, &cfg, index);
            let res = run_kernel(Problem::Vc, &ParamTag::Vc, &g).unwrap();
            let bp = res.stats.lifted_boundary;
            let rest = res.reduced.graph.num_vertices() - bp;
            assert!(rest <= bp.max(1), "vc[vc] instance {index}: {rest} > {bp}");
            checked += 1;
        }
    }
    // vc[fvs]: active conflicts within |B'|^2 + C(|B'|,2) |B'|.
    {
        let cfg = family_config("vc", "fvs", 400);
        for index in 0..cfg.instances {
            let g = gen_instance(&ParamTag::Fvs, &cfg, index);
            let res = run_kernel(Problem::Vc, &ParamTag::Fvs, &g).unwrap();
            let input_verts: BTreeSet<VertexId> = g.graph.vertices().collect();
            let modulator = res.reduced.modulator.clone().unwrap();
            let working: BTreeSet<VertexId> =
                modulator.intersection(&input_verts).copied().collect();
            let leaves: BTreeSet<VertexId> = modulator.difference(&input_verts).copied().collect();
            let mut marks = LeafMarks::default();
            for &l in &leaves {
                let x = res.reduced.graph.open_neighbors(l).next().unwrap();
                marks.leaves.insert(x, l);
            }
            let view = BoundariedGraph::new(res.reduced.graph.clone(), working.clone());
            let table = conflict_table(&view, &marks).unwrap();
            let b = working.len() as u64;
            let bound = b * b + b * (b.saturating_sub(1)) / 2 * b;
            assert!(
                table.active_conflicts() <= bound,
                "vc[fvs] instance {index}: {} > {bound}",
                table.active_conflicts()
            );
            checked += 1;
        }
    }
    // fvs[fvs]: degree, loop, and flower fixpoints.
    {
        let cfg = family_config("fvs", "fvs", 400);
        for index in 0..cfg.instances {
            let g = gen_instance(&ParamTag::Fvs, &cfg, index);
            let res = run_kernel(Problem::Fvs, &ParamTag::Fvs, &g).unwrap();
            let out = &res.reduced.graph;
            let working = res.reduced.modulator.clone().unwrap();
            let bound = (working.len() as u32).max(1);
            for v in out.vertices() {
                if working.contains(&v) {
                    let in_rest = out
                        .open_neighbor_set(v)
                        .into_iter()
                        .filter(|u| !working.contains(u))
                        .count() as u32;
                    assert!(in_rest < 5 * bound, "fvs instance {index} vertex {v}");
                    if out.has_loop(v) {
                        assert_eq!(out.degree_slots(v), 2, "loop with extras at {v}");
                    } else if out.has_vertex(v) {
                        let flower = max_flower(out, v).unwrap();
                        assert!(
                            flower.order <= bound,
                            "fvs instance {index}: flower {} at {v}",
                            flower.order
                        );
                    }
                } else {
                    // degree >= 3, or the unique subdivision witness kept
                    // for a non-adjacent boundary pair
                    let nbrs: Vec<VertexId> = out.open_neighbor_set(v).into_iter().collect();
                    let witness = out.degree_slots(v) == 2
                        && nbrs.len() == 2
                        && nbrs.iter().all(|u| working.contains(u))
                        && out.edge_mult(nbrs[0], nbrs[1]) == 0;
                    assert!(
                        out.degree_slots(v) >= 3 || witness,
                        "fvs instance {index}: rest vertex {v} has degree {}",
                        out.degree_slots(v)
                    );
                }
            }
            checked += 1;
        }
    }
    println!(
        "[criterion 5] PASS - fixpoint invariants on {checked} kernel outputs ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_6_oracle_cross_validation() {
    let started = std::time::Instant::now();
    let big: Vec<Problem> = vec![Problem::Vc, Problem::Fvs, Problem::Ds, Problem::Mc];
    let small: Vec<Problem> = vec![
        Problem::Ce,
        Problem::Lc,
        Problem::Lp,
        Problem::Hc,
        Problem::Hp,
        Problem::Tds,
    ];
    let lim = OracleLimits::default();

    fn sweep(n: usize, problems: &[Problem], lim: &OracleLimits) -> u64 {
        let bits = n * n.saturating_sub(1) / 2;
        let total: u64 = 1 << bits;
        let workers = 8u64;
        let counted = std::sync::atomic::AtomicU64::new(0);
        std::thread::scope(|scope| {
            for w in 0..workers {
                let counted = &counted;
                scope.spawn(move || {
                    let mut local = 0u64;
                    let mut mask = w;
                    while mask < total {
                        let mut adj = vec![0u32; n];
                        let mut b = 0;
                        for u in 0..n {
                            for v in (u + 1)..n {
                                if mask & (1 << b) != 0 {
                                    adj[u] |= 1 << v;
                                    adj[v] |= 1 << u;
                                }
                                b += 1;
                            }
                        }
                        let sg = SmallGraph::from_adj(adj);
                        for &p in problems {
                            let a = opt_exact_small(p, &sg, lim).unwrap();
                            let b = naive_opt_small(p, &sg).unwrap();
                            assert_eq!(a, b, "{} disagrees on n={n} mask={mask}", p.tag());
                            local += 1;
                        }
                        mask += workers;
                    }
                    counted.fetch_add(local, std::sync::atomic::Ordering::Relaxed);
                });
            }
        });
        counted.into_inner()
    }

    let mut comparisons = 0;
    for n in 0..=7usize {
        comparisons += sweep(n, &big, &lim);
    }
    for n in 0..=6usize {
        comparisons += sweep(n, &small, &lim);
    }
    println!(
        "[criterion 6] PASS - {comparisons} oracle pairs agree on the exhaustive corpora ({:?})",
        started.elapsed()
    );
}

#[test]
fn criterion_7_fault_injection() {
    let started = std::time::Instant::now();
    let lim = OracleLimits::with_max_n(20);
    for m in ALL_MUTANTS {
        let (problem, param) = m.problem_param();
        let cfg = FuzzConfig {
            problem: problem.tag().into(),
            param: param.tag(),
            seed: 0xfa01,
            instances: 60,
            attachments: 20,
            max_n: 10,
            max_b: 2,
            max_k: 2,
            max_fresh: 3,
            oracle_max_n: 18,
            ..Default::default()
        };
        let mut corpus = vec![m.targeted_instance()];
        for index in 0..cfg.instances {
            corpus.push(gen_instance(&param, &cfg, index));
        }
        let mut caught = false;
        for (i, g) in corpus.iter().enumerate() {
            let Ok(res) = m.run(g) else { continue };
            let attachments = attachments_for(g, &cfg);
            let verdict =
                check_equivalence(problem, g, &res, &attachments, &lim, i as u64).unwrap();
            if !verdict.pass {
                caught = true;
                break;
            }
        }
        assert!(caught, "mutant {m:?} was not detected within the budget");
    }
    println!(
        "[criterion 7] PASS - all {} seeded mutants detected ({:?})",
        ALL_MUTANTS.len(),
        started.elapsed()
    );
}

#[test]
fn criterion_8_cli_determinism() {
    let started = std::time::Instant::now();
    let bin = env!("CARGO_BIN_EXE_bkern");
    let dir = std::env::temp_dir().join(format!("bkern-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // instance and attachment fixtures
    let cfg = family_config("vc", "fvs", 1);
    let inst = gen_instance(&ParamTag::Fvs, &cfg, 3);
    let att = bkern_core::harness::gen_attachment(&inst.boundary, 4, 7, 5);
    let inst_path = dir.join("inst.bkg");
    let att_path = dir.join("att.bkg");
    std::fs::write(&inst_path, bkern_core::bkg::write_bkg(&inst)).unwrap();
    std::fs::write(&att_path, bkern_core::bkg::write_bkg(&att)).unwrap();
    let fuzz_cfg = FuzzConfig {
        problem: "vc".into(),
        param: "vc".into(),
        instances: 12,
        attachments: 8,
        max_n: 10,
        max_b: 2,
        max_k: 2,
        max_fresh: 3,
        oracle_max_n: 16,
        seed: 99,
        ..Default::default()
    };
    let cfg_path = dir.join("fuzz.json");
    std::fs::write(&cfg_path, serde_json::to_string(&fuzz_cfg).unwrap()).unwrap();

    let td_cfg = FuzzConfig {
        max_b: 0,
        ..family_config("vc", "td:2", 1)
    };
    let td_inst = gen_instance(&ParamTag::Td(2), &td_cfg, 5);
    let td_path = dir.join("td.bkg");
    std::fs::write(&td_path, bkern_core::bkg::write_bkg(&td_inst)).unwrap();

    let run = |label: &str, args: &[&str], outputs: &[&std::path::Path]| -> Vec<Vec<u8>> {
        let out = Command::new(bin).args(args).output().expect("runs");
        assert!(
            out.status.success(),
            "{label}: {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut blobs = vec![out.stdout];
        for p in outputs {
            blobs.push(std::fs::read(p).unwrap());
        }
        blobs
    };

    let subcommands: Vec<(&str, Vec<String>, Vec<std::path::PathBuf>)> = vec![
        (
            "kernelize",
            vec![
                "kernelize".into(),
                "--problem".into(),
                "vc".into(),
                "--param".into(),
                "fvs".into(),
                "--in".into(),
                inst_path.display().to_string(),
                "--out".into(),
                dir.join("out.bkg").display().to_string(),
                "--report".into(),
                dir.join("report.json").display().to_string(),
                "--seed".into(),
                "42".into(),
            ],
            vec![dir.join("out.bkg"), dir.join("report.json")],
        ),
        (
            "glue",
            vec![
                "glue".into(),
                inst_path.display().to_string(),
                att_path.display().to_string(),
                "--out".into(),
                dir.join("glued.bkg").display().to_string(),
            ],
            vec![dir.join("glued.bkg")],
        ),
        (
            "solve",
            vec![
                "solve".into(),
                "--problem".into(),
                "vc".into(),
                inst_path.display().to_string(),
            ],
            vec![],
        ),
        (
            "fuzz",
            vec![
                "fuzz".into(),
                "--config".into(),
                cfg_path.display().to_string(),
                "--out".into(),
                dir.join("verdicts.jsonl").display().to_string(),
            ],
            vec![dir.join("verdicts.jsonl")],
        ),
        (
            "family",
            vec![
                "family".into(),
                "--name".into(),
                "lc-deg2".into(),
                "--i".into(),
                "2".into(),
                "--j".into(),
                "3".into(),
                "--out-dir".into(),
                dir.join("fam").display().to_string(),
            ],
            vec![
                dir.join("fam").join("lc-deg2-member-2.bkg"),
                dir.join("fam").join("lc-deg2-witness-right.bkg"),
            ],
        ),
        (
            "verify-lb",
            vec![
                "verify-lb".into(),
                "--name".into(),
                "mc-bipartite".into(),
                "--i".into(),
                "1".into(),
                "--j".into(),
                "2".into(),
            ],
            vec![],
        ),
        (
            "derive-kernel",
            vec![
                "derive-kernel".into(),
                "--problem".into(),
                "vc".into(),
                "--param".into(),
                "td:2".into(),
                "--ell".into(),
                "5".into(),
                "--in".into(),
                td_path.display().to_string(),
                "--out".into(),
                dir.join("derived.bkg").display().to_string(),
            ],
            vec![dir.join("derived.bkg")],
        ),
    ];

    for (label, args, outputs) in &subcommands {
        let argv: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let outs: Vec<&std::path::Path> = outputs.iter().map(|p| p.as_path()).collect();
        let first = run(label, &argv, &outs);
        let second = run(label, &argv, &outs);
        assert_eq!(first, second, "{label} output is not byte-identical");
    }
    std::fs::remove_dir_all(&dir).ok();
    println!(
        "[criterion 8] PASS - {} CLI subcommands byte-identical across repeated runs ({:?})",
        subcommands.len(),
        started.elapsed()
    );
}
