//! `recon`: generate instances, run reconstructions, benchmark and fit.

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use recon_core::approx::{approx_reconstruct, verify_approx};
use recon_core::bench::{self, reconstruct_exact, Algo, AlgoConfig, BenchConfig, FRule};
use recon_core::generators::{GenKind, GenSpec};
use recon_core::graph::all_pairs_distances;
use recon_core::seed::{phase_rng, stream};
use recon_core::{CountingOracle, Error, Graph, Result};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "recon", version, about = "Reconstruct hidden graphs from distance queries")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph and write it in edge-list format.
    Gen {
        #[arg(long = "type", value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        delta: usize,
        #[arg(long, env = "RECON_MASTER_SEED", default_value_t = 0)]
        seed: u64,
        /// Branch count of the lower-bound family.
        #[arg(long)]
        f: Option<usize>,
        /// Branch length of the lower-bound family.
        #[arg(long)]
        k: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reconstruct a graph file exactly and report the query count.
    Reconstruct {
        graph: PathBuf,
        #[arg(long, value_parser = parse_exact_algo)]
        algo: Algo,
        #[arg(long, env = "RECON_MASTER_SEED", default_value_t = 0)]
        seed: u64,
        /// Center rate (bounded).
        #[arg(long)]
        s: Option<usize>,
        /// Sample-size constant (bounded).
        #[arg(long = "K")]
        k: Option<f64>,
        /// Query every pair the literal algorithm would (bounded).
        #[arg(long)]
        literal: bool,
        /// Balance factor (outerplanar).
        #[arg(long)]
        beta: Option<f64>,
        /// Path-sampling constant (outerplanar).
        #[arg(long = "C")]
        c: Option<f64>,
    },
    /// Approximate the metric of a graph file within factor f.
    Approx {
        graph: PathBuf,
        /// A number, or a rule: const:<k>, sqrt, n/<k>.
        #[arg(long)]
        f: String,
        #[arg(long, env = "RECON_MASTER_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Run a benchmark described by a JSON config and write CSV.
    Bench {
        config: PathBuf,
        /// Overrides the config's `out`; stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's `master_seed`.
        #[arg(long, env = "RECON_MASTER_SEED")]
        seed: Option<u64>,
    },
    /// Fit the query-count exponent from a benchmark CSV.
    Fit { csv: PathBuf },
}

fn parse_kind(s: &str) -> std::result::Result<GenKind, String> {
    serde_json::from_value(Value::String(s.into())).map_err(|_| format!("unknown type {s:?}"))
}

fn parse_exact_algo(s: &str) -> std::result::Result<Algo, String> {
    match s.parse::<Algo>() {
        Ok(a) if a.is_exact() => Ok(a),
        Ok(_) => Err("use the approx subcommand for approximation".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn load(path: &Path) -> Result<Graph> {
    Graph::read_text(BufReader::new(File::open(path)?))
}

fn print(v: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Gen { kind, n, delta, seed, f, k, out } => {
            let spec = GenSpec { kind, n, delta, seed, f, k, perms: None };
            let g = spec.generate()?;
            match &out {
                Some(p) => fs::write(p, g.to_text())?,
                None => io::stdout().write_all(g.to_text().as_bytes())?,
            }
            let summary = json!({
                "schema_version": SCHEMA_VERSION,
                "n": g.n(),
                "m": g.m(),
                "max_degree": g.max_degree(),
                "spec": spec,
            });
            // Keep stdout clean for the graph itself when no file is given.
            if out.is_some() {
                print(&summary)?;
            } else {
                eprintln!("{summary}");
            }
            Ok(())
        }
        Cmd::Reconstruct { graph, algo, seed, s, k, literal, beta, c } => {
            let g = load(&graph)?;
            let mut cfg = AlgoConfig::default();
            cfg.centers.s = s.or(cfg.centers.s);
            cfg.centers.k = k.unwrap_or(cfg.centers.k);
            cfg.centers.skip_deducible = !literal;
            cfg.partition.beta = beta.unwrap_or(cfg.partition.beta);
            cfg.partition.sampling_constant = c.unwrap_or(cfg.partition.sampling_constant);
            let mut oracle = CountingOracle::for_graph(&g)?;
            let edges = reconstruct_exact(algo, &mut oracle, &cfg, seed)?;
            let correct = edges == g.edge_set();
            print(&json!({
                "schema_version": SCHEMA_VERSION,
                "algo": algo,
                "n": g.n(),
                "seed": seed,
                "edges_found": edges.len(),
                "correct": correct,
                "stats": oracle.stats(),
                "config": cfg,
            }))?;
            if correct {
                Ok(())
            } else {
                Err(Error::Incorrect(format!("{algo} with seed {seed}")))
            }
        }
        Cmd::Approx { graph, f, seed } => {
            let g = load(&graph)?;
            let f = match f.parse::<f64>() {
                Ok(x) => x,
                Err(_) => f.parse::<FRule>()?.eval(g.n()),
            };
            let dist = all_pairs_distances(&g)?;
            let mut oracle = CountingOracle::new(dist.clone());
            let run = approx_reconstruct(&mut oracle, f, &mut phase_rng(seed, stream::APPROX))?;
            let report = verify_approx(&run.metric, &dist)?;
            print(&json!({
                "schema_version": SCHEMA_VERSION,
                "n": g.n(),
                "f": f,
                "seed": seed,
                "samples": run.samples,
                "ok": report.ok,
                "worst_ratio": report.worst_ratio,
                "violations": report.violations.len(),
                "stats": oracle.stats(),
            }))?;
            if report.ok {
                Ok(())
            } else {
                Err(Error::Incorrect(format!("{} pairs violate the bounds", report.violations.len())))
            }
        }
        Cmd::Bench { config, out, seed } => {
            let cfg = BenchConfig::from_json(&fs::read_to_string(&config)?)?;
            let master = seed.or(cfg.master_seed).unwrap_or(0);
            let rows = bench::run_bench(&cfg, master)?;
            match out.or_else(|| cfg.out.as_ref().map(PathBuf::from)) {
                Some(p) => bench::write_csv(&rows, File::create(p)?),
                None => bench::write_csv(&rows, io::stdout().lock()),
            }
        }
        Cmd::Fit { csv } => {
            let rows = bench::read_csv(File::open(csv)?)?;
            let result = bench::fit(&rows)?;
            let mut v = serde_json::to_value(&result).map_err(io::Error::from)?;
            v["schema_version"] = json!(SCHEMA_VERSION);
            v["algo"] = json!(rows[0].algo);
            print(&v)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Incorrect(_) => 3,
                Error::Io(_) => 1,
                e if e.is_structural() => 2,
                _ => 1,
            })
        }
    }
}
