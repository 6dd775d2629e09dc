//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::collections::VecDeque;

use rand::Rng;
use recon_core::bench::{fit, run_bench, run_row, write_csv, Algo, AlgoConfig, BenchConfig, FRule};
use recon_core::generators::{gen_bounded_degree, gen_lower_bound_tree, gen_outerplanar, lower_bound_vertex, random_permutations};
use recon_core::graph::{all_pairs_distances, components_after_removal, enumerate_all_shortest_paths};
use recon_core::outerplanar::{
    balanced_partition, find_polygon, neighbors_in_order, partition_by_node, shortest_path, BalancedPartitionConfig,
};
use recon_core::seed::{phase_rng, row_seed, stream};
use recon_core::{CountingOracle, Graph, Vertex};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exactness(algo: Algo, ns: &[usize]) -> Outcome {
    let mut exact = 0;
    for run in 0..50 {
        let n = ns[run % ns.len()];
        let seed = row_seed(0xACCE, n, run);
        let r = run_row(algo, n, 4, seed, None, &AlgoConfig::default()).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
        ensure(r.correct, || format!("n={n} seed={seed} reconstructed incorrectly"))?;
        exact += 1;
    }
    Ok(format!("{exact}/50 exact"))
}

fn scaling(algo: Algo, ns: &[usize], max_slope: f64) -> Outcome {
    let cfg = BenchConfig {
        algo,
        ns: ns.to_vec(),
        delta: 4,
        reps: 10,
        f_rule: None,
        master_seed: None,
        out: None,
        algo_config: AlgoConfig::default(),
    };
    let rows = run_bench(&cfg, 0).map_err(|e| e.to_string())?;
    let result = fit(&rows).map_err(|e| e.to_string())?;
    let medians: Vec<String> = result.points.iter().map(|p| format!("{}:{}", p.n, p.median)).collect();
    let detail = format!("slope {:.3} (limit {max_slope}), medians {}", result.slope, medians.join(" "));
    ensure(result.slope <= max_slope, || detail.clone())?;
    Ok(detail)
}

fn c1() -> Outcome {
    exactness(Algo::Bounded, &[64, 128, 256])
}

fn c2() -> Outcome {
    exactness(Algo::Outerplanar, &[64, 256, 1024])
}

fn c3() -> Outcome {
    scaling(Algo::Bounded, &[64, 128, 256, 512], 1.85)
}

fn c4() -> Outcome {
    scaling(Algo::Outerplanar, &[64, 256, 1024, 4096], 1.45)
}

fn approx_rows(rule: &str) -> Result<Vec<recon_core::bench::BenchRecord>, String> {
    let cfg = BenchConfig {
        algo: Algo::Approx,
        ns: vec![256],
        delta: 4,
        reps: 20,
        f_rule: Some(rule.parse::<FRule>().map_err(|e| e.to_string())?),
        master_seed: None,
        out: None,
        algo_config: AlgoConfig::default(),
    };
    run_bench(&cfg, 0xF00D).map_err(|e| e.to_string())
}

fn c5() -> Outcome {
    let mut runs = 0;
    for rule in ["const:1", "const:16", "sqrt"] {
        for r in approx_rows(rule)? {
            ensure(r.correct, || format!("f rule {rule}, seed {}: bounds violated", r.seed))?;
            let worst = r.worst_ratio.unwrap_or(f64::INFINITY);
            ensure(worst <= r.f.unwrap_or(0.0), || format!("f rule {rule}, seed {}: ratio {worst}", r.seed))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, zero violations"))
}

fn c6() -> Outcome {
    let rows = approx_rows("const:16")?;
    let mean = rows.iter().map(|r| r.queries_distinct as f64).sum::<f64>() / rows.len() as f64;
    let n = 256f64;
    let budget = 8.0 * n * n * n.ln() / 16.0;
    let detail = format!("mean distinct {mean:.0}, budget {budget:.0}");
    ensure(mean <= budget, || detail.clone())?;
    Ok(detail)
}

/// Shortest `a`-`b` paths in `g` with `banned` removed: distance and count.
fn bfs_avoiding(g: &Graph, a: Vertex, b: Vertex, banned: Vertex) -> (Option<usize>, Vec<Vec<Vertex>>) {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a]);
    dist[a] = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if w != banned && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[b] == usize::MAX {
        return (None, Vec::new());
    }
    // Walk back from b along decreasing distances, collecting every path.
    fn back(g: &Graph, dist: &[usize], banned: Vertex, v: Vertex, tail: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        tail.push(v);
        if dist[v] == 0 {
            out.push(tail.iter().rev().copied().collect());
        } else {
            for &w in g.neighbors(v) {
                if w != banned && dist[w] + 1 == dist[v] {
                    back(g, dist, banned, w, tail, out);
                }
            }
        }
        tail.pop();
    }
    let mut paths = Vec::new();
    back(g, &dist, banned, b, &mut Vec::new(), &mut paths);
    (Some(dist[b]), paths)
}

fn c7() -> Outcome {
    let mut rng = phase_rng(0xC7, stream::GENERATOR);

    let mut pivots = 0;
    for i in 0..200u64 {
        let n = rng.gen_range(3..=32);
        let g = gen_outerplanar(n, 4, i).map_err(|e| e.to_string())?.graph;
        let all: Vec<Vertex> = (0..n).collect();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        for x in 0..n {
            let got = partition_by_node(&mut o, x, &all).map_err(|e| format!("n={n} seed={i} x={x}: {e}"))?;
            let mut want: Vec<Vec<Vertex>> = components_after_removal(&g, x, &all)
                .unwrap()
                .into_iter()
                .map(|mut c| {
                    c.push(x);
                    c.sort_unstable();
                    c
                })
                .collect();
            want.sort();
            let mut have = got.parts.clone();
            have.sort();
            ensure(have == want, || format!("node partition differs: n={n} seed={i} x={x}"))?;
            pivots += 1;
        }
    }

    for i in 0..500u64 {
        let n = rng.gen_range(2..=64);
        let g =
            if i % 2 == 0 { gen_outerplanar(n, 4, i).map(|o| o.graph) } else { gen_bounded_degree(n, 4, i) }.map_err(|e| e.to_string())?;
        let d = all_pairs_distances(&g).unwrap();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let p = shortest_path(&mut o, a, b, &(0..n).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        let hops_ok = p.windows(2).all(|w| g.has_edge(w[0], w[1]));
        ensure(hops_ok && p[0] == a && p[p.len() - 1] == b && p.len() as u32 == d.get(a, b) + 1, || {
            format!("bad shortest path {p:?} from {a} to {b}, seed {i}")
        })?;
    }

    let mut polygons = 0;
    for i in 0..300u64 {
        let n = rng.gen_range(3..=16);
        let g = gen_outerplanar(n, 4, 1000 + i).map_err(|e| e.to_string())?.graph;
        let all: Vec<Vertex> = (0..n).collect();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        for x in 0..n {
            if g.degree(x) < 2 || components_after_removal(&g, x, &all).unwrap().len() != 1 {
                continue;
            }
            let ys = neighbors_in_order(&mut o, x, &all).map_err(|e| e.to_string())?;
            for w in ys.windows(2) {
                let (yi, yj) = (w[0], w[1]);
                let poly = find_polygon(&mut o, x, yi, yj, &all).map_err(|e| format!("seed {i} x={x}: {e}"))?;
                let (len, paths) = bfs_avoiding(&g, yi, yj, x);
                let len = len.ok_or_else(|| format!("{yi} and {yj} are not connected without {x}"))?;
                ensure(paths.len() == 1, || format!("seed {i}: {} minimal cycles through {yi}-{x}-{yj}", paths.len()))?;
                let mut want = vec![x];
                want.extend(&paths[0]);
                ensure(poly.vertices() == want.as_slice() && poly.len() == len + 2, || {
                    format!("seed {i}: polygon {:?}, minimal cycle {want:?}", poly.vertices())
                })?;
                polygons += 1;
            }
        }
    }
    Ok(format!("{pivots} pivots, 500 paths, {polygons} polygons agree"))
}

fn c8() -> Outcome {
    let cfg = BalancedPartitionConfig::default();
    let mut calls = 0;
    for i in 0..100u64 {
        let n = 10 + (i as usize % 11);
        let g = gen_outerplanar(n, 4, 0xC8 + i).map_err(|e| e.to_string())?.graph;
        let set: Vec<Vertex> = (0..n).collect();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let bp = balanced_partition(&mut o, &set, &cfg, &mut phase_rng(i, stream::PARTITION)).map_err(|e| format!("seed {i}: {e}"))?;
        let limit = (bp.beta * n as f64).floor() as usize;
        ensure(bp.beta == cfg.beta, || format!("seed {i}: beta relaxed to {}", bp.beta))?;
        let total: usize = bp.parts.iter().map(Vec::len).sum();
        ensure(total <= n + 2 * (bp.parts.len() - 1), || format!("seed {i}: parts sum to {total}"))?;
        for p in &bp.parts {
            ensure(p.len() <= limit, || format!("seed {i}: part of {} exceeds {limit}", p.len()))?;
            for (j, &a) in p.iter().enumerate() {
                for &b in &p[j + 1..] {
                    for path in enumerate_all_shortest_paths(&g, a, b).map_err(|e| e.to_string())? {
                        ensure(path.iter().all(|v| p.binary_search(v).is_ok()), || {
                            format!("seed {i}: part {p:?} misses a shortest path {path:?}")
                        })?;
                    }
                }
            }
        }
        for (u, v) in g.edges() {
            ensure(bp.parts.iter().any(|p| p.contains(&u) && p.contains(&v)), || format!("seed {i}: edge {u}-{v} lost"))?;
        }
        calls += 1;
    }
    Ok(format!("{calls} partitions, zero violations"))
}

fn c9() -> Outcome {
    let mut pairs = 0;
    for (f, k) in [(1, 2), (2, 3), (3, 4)] {
        for seed in 0..5 {
            let perms = random_permutations(f, k, seed);
            let g = gen_lower_bound_tree(f, k, &perms).map_err(|e| e.to_string())?;
            let n = 2 * f * k + 1;
            ensure(g.n() == n, || format!("f={f} k={k}: {} vertices", g.n()))?;

            // Level and branch of every vertex from the construction rule.
            let mut level = vec![1usize; n];
            let mut branch = vec![usize::MAX; n];
            for start in 1..=k {
                let mut i = start;
                for l in 2..=2 * f + 1 {
                    let v = lower_bound_vertex(k, l, i);
                    level[v] = l;
                    branch[v] = start;
                    if l <= f {
                        continue;
                    }
                    if l <= 2 * f {
                        i = perms[l - f - 1][i - 1];
                    }
                }
            }
            let d = all_pairs_distances(&g).unwrap();
            for u in 1..n {
                for v in u + 1..n {
                    let want = if branch[u] == branch[v] { level[u].abs_diff(level[v]) } else { level[u] + level[v] - 2 };
                    ensure(d.get(u, v) as usize == want, || format!("f={f} k={k}: d({u},{v}) = {} not {want}", d.get(u, v)))?;
                    pairs += 1;
                }
            }

            for algo in [Algo::Bounded, Algo::Outerplanar] {
                let mut o = CountingOracle::for_graph(&g).unwrap();
                let edges = recon_core::bench::reconstruct_exact(algo, &mut o, &AlgoConfig::default(), seed).map_err(|e| e.to_string())?;
                ensure(edges == g.edge_set(), || format!("{algo} failed on f={f} k={k} seed={seed}"))?;
            }
        }
    }
    Ok(format!("distance law on {pairs} pairs; both exact algorithms reconstruct all 15 trees"))
}

fn c10() -> Outcome {
    let configs = [
        r#"{"algo":"bounded","ns":[64,128,256],"reps":3}"#,
        r#"{"algo":"outerplanar","ns":[64,256],"reps":3}"#,
        r#"{"algo":"approx","ns":[100],"reps":3,"f_rule":"sqrt"}"#,
    ];
    for text in configs {
        let cfg = BenchConfig::from_json(text).map_err(|e| e.to_string())?;
        let csv = || -> Result<String, String> {
            let rows = run_bench(&cfg, 42).map_err(|e| e.to_string())?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
            let text = String::from_utf8(buf).unwrap();
            Ok(text.lines().map(|l| l.rsplit_once(',').unwrap().0).collect::<Vec<_>>().join("\n"))
        };
        ensure(csv()? == csv()?, || format!("{} bench differs between runs", cfg.algo))?;
    }
    Ok("bounded, outerplanar and approx benches repeat identically".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 exactness, bounded degree", c1),
        ("2 exactness, outerplanar", c2),
        ("3 scaling, bounded degree", c3),
        ("4 scaling, outerplanar", c4),
        ("5 approximation bounds", c5),
        ("6 approximation query budget", c6),
        ("7 subroutines against brute force", c7),
        ("8 balanced partition invariants", c8),
        ("9 lower-bound trees", c9),
        ("10 determinism", c10),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
