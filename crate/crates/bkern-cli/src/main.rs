mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bkern_core::bkg::{parse_bkg, write_bkg};
use bkern_core::error::Error;
use bkern_core::graph::glue;
use bkern_core::harness::{run_campaign, run_kernel, FuzzConfig, ParamTag};
use bkern_core::kernel::vc_td::regular_kernel_vc_td;
use bkern_core::lower_bounds::{
    demonstrate_ds_index, gen_family, verify_separation, FamilyName, FamilySpec,
};
use bkern_core::solvers::{opt_exact, OracleLimits, Problem};
use clap::{Parser, Subcommand};
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "bkern",
    version,
    about = "Provably safe local preprocessing of boundaried graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a boundaried kernelization on a BKG file.
    Kernelize {
        /// Target problem: vc, fvs, lc, lp, hc, hp (others are refused).
        #[arg(long)]
        problem: String,
        /// Parameterization: vc, fvs, td:<d>, deg2.
        #[arg(long)]
        param: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include wall-clock timing in the report (breaks byte-for-byte
        /// reproducibility of report files).
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Glue two boundaried graphs into a plain graph.
    Glue {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Compute the exact optimum of a problem on the graph of a BKG file.
    Solve {
        #[arg(long)]
        problem: String,
        file: PathBuf,
        #[arg(long, default_value_t = 18)]
        max_n: usize,
    },
    /// Run a gluing-equivalence fuzz campaign described by a JSON config.
    Fuzz {
        #[arg(long)]
        config: PathBuf,
        /// Verdicts as JSON lines; stdout when omitted.
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Write the members and witnesses of a counterexample family.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long)]
        q: Option<u32>,
        /// ds-subsets member selection as a bitmask over the half-size
        /// subsets.
        #[arg(long)]
        mask: Option<u64>,
        #[arg(long = "out-dir")]
        out_dir: PathBuf,
    },
    /// Check by oracle that two family members are not gluing-equivalent.
    VerifyLb {
        #[arg(long)]
        name: String,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Derive a regular kernel by running with an empty boundary.
    DeriveKernel {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        param: String,
        #[arg(long)]
        ell: i64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap help/version go to stdout with success
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::Precondition(_) | Error::Io(_) => 2,
                Error::Unsupported(_) => 3,
                Error::OracleCap(_) => 4,
            })
        }
    }
}

fn read_graph(path: &Path) -> Result<bkern_core::BoundariedGraph, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_bkg(&text, false)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Kernelize {
            problem,
            param,
            input,
            output,
            report,
            timings,
            seed,
        } => {
            let p = Problem::parse(&problem)
                .ok_or_else(|| Error::precondition(format!("unknown problem `{problem}`")))?;
            let t = ParamTag::parse(&param)
                .ok_or_else(|| Error::precondition(format!("unknown param `{param}`")))?;
            let g = read_graph(&input)?;
            let started = std::time::Instant::now();
            let res = run_kernel(p, &t, &g)?;
            let elapsed = timings.then(|| started.elapsed().as_millis());
            std::fs::write(&output, write_bkg(&res.reduced))?;
            if let Some(rp) = report {
                let param_value = g.modulator.as_ref().map_or(0, |m| m.len());
                let rep = RunReport::new(&problem, &param, &res, param_value, elapsed, seed);
                let mut json = serde_json::to_string_pretty(&rep).expect("report serializes");
                json.push('\n');
                std::fs::write(&rp, json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Glue { a, b, output } => {
            let ga = read_graph(&a)?;
            let gb = read_graph(&b)?;
            let glued = glue(&ga, &gb);
            let out = bkern_core::BoundariedGraph::new(glued, Default::default());
            std::fs::write(&output, write_bkg(&out))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Solve {
            problem,
            file,
            max_n,
        } => {
            let p = Problem::parse(&problem)
                .ok_or_else(|| Error::precondition(format!("unknown problem `{problem}`")))?;
            let g = read_graph(&file)?;
            let v = opt_exact(p, &g.graph, &OracleLimits::with_max_n(max_n))?;
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fuzz { config, output } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg: FuzzConfig = serde_json::from_str(&text)
                .map_err(|e| Error::precondition(format!("bad config: {e}")))?;
            let report = run_campaign(&cfg)?;
            let mut lines = String::new();
            for v in &report.verdicts {
                lines.push_str(&serde_json::to_string(v).expect("verdict serializes"));
                lines.push('\n');
            }
            match output {
                Some(path) => std::fs::write(&path, lines)?,
                None => print!("{lines}"),
            }
            eprintln!(
                "{} instances, {} failures ({}[{}], seed {})",
                report.instances, report.failures, report.problem, report.param, report.seed
            );
            Ok(if report.failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            })
        }
        Cmd::Family {
            name,
            i,
            j,
            q,
            mask,
            out_dir,
        } => {
            let fname = FamilyName::parse(&name)
                .ok_or_else(|| Error::precondition(format!("unknown family `{name}`")))?;
            let spec = FamilySpec {
                name: fname,
                i,
                j,
                q,
                member_mask: mask,
            };
            let family = gen_family(&spec)?;
            std::fs::create_dir_all(&out_dir)?;
            for (label, g) in family.members.iter().chain(family.witnesses.iter()) {
                let path = out_dir.join(format!("{}-{label}.bkg", fname.tag()));
                std::fs::write(&path, write_bkg(g))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyLb {
            name,
            i,
            j,
            q,
            max_n,
        } => {
            let fname = FamilyName::parse(&name)
                .ok_or_else(|| Error::precondition(format!("unknown family `{name}`")))?;
            let lim = OracleLimits::with_max_n(max_n);
            let json = match (fname, i, j) {
                (FamilyName::DsSubsets, None, None) => {
                    let q =
                        q.ok_or_else(|| Error::precondition("ds-subsets needs --q or --i/--j"))?;
                    let rep = demonstrate_ds_index(q, &lim)?;
                    serde_json::to_string_pretty(&rep).expect("report serializes")
                }
                (_, Some(i), Some(j)) => {
                    let rep = verify_separation(fname, i, j, &lim)?;
                    serde_json::to_string_pretty(&rep).expect("report serializes")
                }
                _ => {
                    return Err(Error::precondition(
                        "verify-lb needs --i and --j (or --q for ds-subsets)",
                    ))
                }
            };
            println!("{json}");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::DeriveKernel {
            problem,
            param,
            ell,
            input,
            output,
        } => {
            if Problem::parse(&problem) != Some(Problem::Vc) {
                return Err(Error::Unsupported(
                    "regular-kernel derivation is implemented for problem vc".into(),
                ));
            }
            let Some(ParamTag::Td(d)) = ParamTag::parse(&param) else {
                return Err(Error::Unsupported(
                    "regular-kernel derivation expects --param td:<d>".into(),
                ));
            };
            let g = read_graph(&input)?;
            let modulator = g.modulator.clone().unwrap_or_default();
            let rk = regular_kernel_vc_td(&g.graph, &modulator, d, ell)?;
            let out = bkern_core::BoundariedGraph {
                graph: rk.graph.clone(),
                boundary: Default::default(),
                modulator: Some(rk.modulator.clone()),
                target_class: bkern_core::TargetClass::Treedepth(d),
                td_parents: None,
            };
            if let Some(path) = output {
                std::fs::write(&path, write_bkg(&out))?;
            }
            println!(
                "{}",
                serde_json::json!({
                    "ell": rk.ell,
                    "delta": rk.delta,
                    "n": rk.graph.num_vertices(),
                    "m": rk.graph.num_edge_slots(),
                })
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
