//! Browser bindings. Every entry point returns a JSON string for the page in
//! `www/` to draw.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use recon_core::approx::{approx_reconstruct, verify_approx};
use recon_core::bench::{self, reconstruct_exact, Algo, AlgoConfig, BenchConfig, FRule};
use recon_core::generators::{gen_bounded_degree, gen_outerplanar};
use recon_core::graph::all_pairs_distances;
use recon_core::seed::{phase_rng, stream};
use recon_core::{CountingOracle, Error, Graph, Result};

fn to_js(r: Result<Value>) -> std::result::Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e.to_string()))
}

fn edges(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(u, v)| [u, v]).collect()
}

/// Instance plus the base cycle of an outerplanar instance, which the page
/// pins to a circle before relaxing the rest.
fn instance(kind: &str, n: usize, delta: usize, seed: u64) -> Result<(Graph, Vec<usize>)> {
    match kind {
        "outerplanar" => {
            let inst = gen_outerplanar(n, delta, seed)?;
            Ok((inst.graph, inst.boundary))
        }
        "bounded" => Ok((gen_bounded_degree(n, delta, seed)?, Vec::new())),
        _ => Err(Error::InvalidArgument(format!("unknown graph kind {kind:?}"))),
    }
}

pub fn reconstruct(kind: &str, n: usize, delta: usize, seed: u64) -> Result<Value> {
    let (g, order) = instance(kind, n, delta, seed)?;
    let algo: Algo = kind.parse()?;
    let mut oracle = CountingOracle::for_graph(&g)?;
    let found = reconstruct_exact(algo, &mut oracle, &AlgoConfig::default(), seed)?;
    let stats = oracle.stats();
    Ok(json!({
        "n": n,
        "edges": edges(&g),
        "order": order,
        "found": found.iter().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "correct": found == g.edge_set(),
        "distinct": stats.distinct,
        "raw": stats.raw,
        "all_pairs": n * (n - 1) / 2,
    }))
}

pub fn approximate(n: usize, f: f64, seed: u64) -> Result<Value> {
    let g = gen_bounded_degree(n, 4, seed)?;
    let dist = all_pairs_distances(&g)?;
    let mut oracle = CountingOracle::new(dist.clone());
    let run = approx_reconstruct(&mut oracle, f, &mut phase_rng(seed, stream::APPROX))?;
    let report = verify_approx(&run.metric, &dist)?;
    // Histogram of d / e rounded down, indexed by ratio.
    let top = f.floor() as usize;
    let mut hist = vec![0usize; top + 1];
    for u in 0..n {
        for v in u + 1..n {
            let r = dist.get(u, v) / run.metric.get(u, v);
            hist[(r as usize).min(top)] += 1;
        }
    }
    Ok(json!({
        "n": n,
        "f": f,
        "ok": report.ok,
        "worst_ratio": report.worst_ratio,
        "samples": run.samples,
        "distinct": oracle.stats().distinct,
        "all_pairs": n * (n - 1) / 2,
        "histogram": hist,
    }))
}

pub fn scaling(algo: &str, ns: &[usize], reps: usize, seed: u64) -> Result<Value> {
    let algo: Algo = algo.parse()?;
    let cfg = BenchConfig {
        algo,
        ns: ns.to_vec(),
        delta: 4,
        reps,
        f_rule: (algo == Algo::Approx).then_some(FRule::Sqrt),
        master_seed: Some(seed),
        out: None,
        algo_config: AlgoConfig::default(),
    };
    let rows = bench::run_bench(&cfg, seed)?;
    let fit = bench::fit(&rows)?;
    Ok(json!({ "algo": algo, "fit": fit }))
}

#[wasm_bindgen]
pub fn reconstruct_demo(kind: &str, n: usize, seed: u64) -> std::result::Result<String, JsValue> {
    to_js(reconstruct(kind, n, 4, seed))
}

#[wasm_bindgen]
pub fn approx_demo(n: usize, f: f64, seed: u64) -> std::result::Result<String, JsValue> {
    to_js(approximate(n, f, seed))
}

#[wasm_bindgen]
pub fn scaling_demo(algo: &str, ns: Vec<usize>, reps: usize, seed: u64) -> std::result::Result<String, JsValue> {
    to_js(scaling(algo, &ns, reps, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_both_kinds() {
        for kind in ["bounded", "outerplanar"] {
            let v = reconstruct(kind, 40, 4, 2).unwrap();
            assert_eq!(v["correct"], true, "{kind}");
        }
        let v = reconstruct("outerplanar", 30, 4, 1).unwrap();
        let cycle = v["order"].as_array().unwrap().len();
        assert!((3..=30).contains(&cycle));
        assert!(reconstruct("grid", 10, 4, 0).is_err());
    }

    #[test]
    fn approx_histogram_stays_within_f() {
        let v = approximate(60, 4.0, 3).unwrap();
        assert_eq!(v["ok"], true);
        let hist = v["histogram"].as_array().unwrap();
        assert_eq!(hist.len(), 5);
        assert_eq!(hist[0], 0);
        let total: u64 = hist.iter().map(|h| h.as_u64().unwrap()).sum();
        assert_eq!(total, 60 * 59 / 2);
    }

    #[test]
    fn scaling_fit() {
        let v = scaling("exhaustive", &[16, 32, 64], 1, 0).unwrap();
        assert!((v["fit"]["slope"].as_f64().unwrap() - 2.0).abs() < 0.1);
    }
}
