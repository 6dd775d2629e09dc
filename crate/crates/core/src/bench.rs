//! Batch benchmarking: one CSV row per `(n, rep)`, and log-log fits of the
//! median query count against `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::approx::{approx_reconstruct, verify_approx};
use crate::bounded::{reconstruct_bounded_degree, CenterConfig};
use crate::error::{Error, Result};
use crate::generators::{gen_bounded_degree, gen_outerplanar};
use crate::graph::{all_pairs_distances, EdgeSet, Graph, Vertex};
use crate::oracle::{CountingOracle, DistanceOracle};
use crate::outerplanar::{exhaustive_reconstruct, reconstruct_outerplanar, BalancedPartitionConfig};
use crate::seed::{phase_rng, row_seed, stream};

pub const CSV_HEADER: &str = "algo,n,delta,seed,f,queries_distinct,queries_raw,correct,worst_ratio,wall_ms";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Bounded,
    Outerplanar,
    Exhaustive,
    Approx,
}

impl Algo {
    pub fn is_exact(self) -> bool {
        self != Algo::Approx
    }

    /// Instance family the benchmark draws for this algorithm.
    pub fn instance(self, n: usize, delta: usize, seed: u64) -> Result<Graph> {
        match self {
            Algo::Outerplanar => Ok(gen_outerplanar(n, delta, seed)?.graph),
            _ => gen_bounded_degree(n, delta, seed),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::Bounded => "bounded",
            Algo::Outerplanar => "outerplanar",
            Algo::Exhaustive => "exhaustive",
            Algo::Approx => "approx",
        })
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounded" => Ok(Algo::Bounded),
            "outerplanar" => Ok(Algo::Outerplanar),
            "exhaustive" => Ok(Algo::Exhaustive),
            "approx" => Ok(Algo::Approx),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// Approximation factor as a function of `n`: `const:<k>`, `sqrt` or `n/<k>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FRule {
    Const(f64),
    Sqrt,
    Div(f64),
}

impl FRule {
    /// Never below 1.
    pub fn eval(self, n: usize) -> f64 {
        let f = match self {
            FRule::Const(k) => k,
            FRule::Sqrt => (n as f64).sqrt(),
            FRule::Div(k) => n as f64 / k,
        };
        f.max(1.0)
    }
}

impl FromStr for FRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let number = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|k| k.is_finite() && *k > 0.0)
                .ok_or_else(|| Error::InvalidArgument(format!("bad number {t:?} in f-rule {s:?}")))
        };
        if s == "sqrt" {
            Ok(FRule::Sqrt)
        } else if let Some(k) = s.strip_prefix("const:") {
            Ok(FRule::Const(number(k)?))
        } else if let Some(k) = s.strip_prefix("n/") {
            Ok(FRule::Div(number(k)?))
        } else {
            Err(Error::InvalidArgument(format!("unknown f-rule {s:?}; expected const:<k>, sqrt or n/<k>")))
        }
    }
}

impl TryFrom<String> for FRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FRule> for String {
    fn from(r: FRule) -> String {
        r.to_string()
    }
}

impl fmt::Display for FRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FRule::Const(k) => write!(f, "const:{k}"),
            FRule::Sqrt => f.write_str("sqrt"),
            FRule::Div(k) => write!(f, "n/{k}"),
        }
    }
}

/// Tunables for the exact algorithms.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlgoConfig {
    pub centers: CenterConfig,
    pub partition: BalancedPartitionConfig,
}

/// Runs an exact algorithm with its own seeded stream.
pub fn reconstruct_exact<O: DistanceOracle + ?Sized>(algo: Algo, oracle: &mut O, cfg: &AlgoConfig, seed: u64) -> Result<EdgeSet> {
    match algo {
        Algo::Bounded => Ok(reconstruct_bounded_degree(oracle, &cfg.centers, &mut phase_rng(seed, stream::CENTERS))?.edges),
        Algo::Outerplanar => Ok(reconstruct_outerplanar(oracle, &cfg.partition, &mut phase_rng(seed, stream::PARTITION))?.edges),
        Algo::Exhaustive => {
            let all: Vec<Vertex> = (0..oracle.vertex_count()).collect();
            exhaustive_reconstruct(oracle, &all)
        }
        Algo::Approx => Err(Error::InvalidArgument("approx is not an exact algorithm".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algo: Algo,
    pub n: usize,
    pub delta: usize,
    pub seed: u64,
    pub f: Option<f64>,
    pub queries_distinct: u64,
    pub queries_raw: u64,
    pub correct: bool,
    pub worst_ratio: Option<f64>,
    pub wall_ms: f64,
}

/// Generates the instance for one row and runs `algo` on it.
pub fn run_row(algo: Algo, n: usize, delta: usize, seed: u64, f: Option<f64>, cfg: &AlgoConfig) -> Result<BenchRecord> {
    let g = algo.instance(n, delta, seed)?;
    let dist = all_pairs_distances(&g)?;
    let mut oracle = CountingOracle::new(dist.clone());
    let (correct, worst_ratio) = if algo.is_exact() {
        (reconstruct_exact(algo, &mut oracle, cfg, seed)? == g.edge_set(), None)
    } else {
        let f = f.ok_or_else(|| Error::InvalidArgument("approx needs an f-rule".into()))?;
        let run = approx_reconstruct(&mut oracle, f, &mut phase_rng(seed, stream::APPROX))?;
        let report = verify_approx(&run.metric, &dist)?;
        (report.ok, Some(report.worst_ratio))
    };
    let stats = oracle.stats();
    Ok(BenchRecord {
        algo,
        n,
        delta,
        seed,
        f: if algo.is_exact() { None } else { f },
        queries_distinct: stats.distinct,
        queries_raw: stats.raw,
        correct,
        worst_ratio,
        wall_ms: stats.wall_ms,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub algo: Algo,
    pub ns: Vec<usize>,
    #[serde(default = "default_delta")]
    pub delta: usize,
    pub reps: usize,
    /// Required for `approx`, ignored otherwise.
    #[serde(default)]
    pub f_rule: Option<FRule>,
    /// Falls back to the command line or environment when absent.
    #[serde(default)]
    pub master_seed: Option<u64>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default, flatten)]
    pub algo_config: AlgoConfig,
}

fn default_delta() -> usize {
    4
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: BenchConfig = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bench config: {e}")))?;
        if cfg.ns.is_empty() || cfg.reps == 0 {
            return Err(Error::InvalidArgument("bench config needs at least one n and one rep".into()));
        }
        if cfg.algo == Algo::Approx && cfg.f_rule.is_none() {
            return Err(Error::InvalidArgument("approx benchmarks need an f_rule".into()));
        }
        Ok(cfg)
    }
}

/// Runs every `(n, rep)` row, in parallel when the `parallel` feature is on.
/// Rows come back ordered by `n` then `rep`. The first incorrect exact
/// reconstruction in that order becomes an error naming its seed.
pub fn run_bench(cfg: &BenchConfig, master_seed: u64) -> Result<Vec<BenchRecord>> {
    let tasks: Vec<(usize, u64)> = cfg.ns.iter().flat_map(|&n| (0..cfg.reps).map(move |rep| (n, row_seed(master_seed, n, rep)))).collect();
    let row = |&(n, seed): &(usize, u64)| run_row(cfg.algo, n, cfg.delta, seed, cfg.f_rule.map(|r| r.eval(n)), &cfg.algo_config);

    #[cfg(feature = "parallel")]
    let results: Vec<Result<BenchRecord>> = {
        use rayon::prelude::*;
        tasks.par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<BenchRecord>> = tasks.iter().map(row).collect();

    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        let r = r?;
        if r.algo.is_exact() && !r.correct {
            return Err(Error::Incorrect(format!("{} on n={} with seed {}", r.algo, r.n, r.seed)));
        }
        rows.push(r);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header.join(",") != CSV_HEADER {
        return Err(Error::InvalidArgument(format!("unexpected CSV header {:?}", header.join(","))));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::InvalidArgument(format!("CSV: {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub n: usize,
    pub median: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Exponent of `n` in the fitted query count.
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<FitPoint>,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

/// Least squares of `log2(median distinct queries)` against `log2(n)`.
/// Rows must all come from one algorithm and cover at least three sizes.
pub fn fit(rows: &[BenchRecord]) -> Result<FitResult> {
    if let Some(first) = rows.first() {
        if rows.iter().any(|r| r.algo != first.algo) {
            return Err(Error::InvalidArgument("rows mix several algorithms".into()));
        }
    }
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in rows {
        by_n.entry(r.n).or_default().push(r.queries_distinct as f64);
    }
    if by_n.len() < 3 {
        return Err(Error::InvalidArgument(format!("a fit needs at least 3 distinct n, got {}", by_n.len())));
    }
    let points: Vec<FitPoint> = by_n.into_iter().map(|(n, mut q)| FitPoint { n, samples: q.len(), median: median(&mut q) }).collect();
    if points.iter().any(|p| p.n < 1 || p.median <= 0.0) {
        return Err(Error::InvalidArgument("fit needs positive n and query counts".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.n as f64).log2()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.median.log2()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(FitResult { slope, intercept: my - slope * mx, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(exp: f64) -> Vec<BenchRecord> {
        [64usize, 128, 256, 512]
            .iter()
            .flat_map(|&n| {
                (0..3).map(move |rep| BenchRecord {
                    algo: Algo::Bounded,
                    n,
                    delta: 4,
                    seed: rep,
                    f: None,
                    queries_distinct: (n as f64).powf(exp).round() as u64 + rep,
                    queries_raw: 0,
                    correct: true,
                    worst_ratio: None,
                    wall_ms: 0.0,
                })
            })
            .collect()
    }

    #[test]
    fn fits_known_exponents() {
        assert!((fit(&synthetic(2.0)).unwrap().slope - 2.0).abs() < 0.01);
        assert!((fit(&synthetic(1.5)).unwrap().slope - 1.5).abs() < 0.01);
        let few: Vec<_> = synthetic(2.0).into_iter().filter(|r| r.n < 256).collect();
        assert!(fit(&few).is_err());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn f_rules() {
        assert_eq!("sqrt".parse::<FRule>().unwrap().eval(256), 16.0);
        assert_eq!("const:16".parse::<FRule>().unwrap().eval(10), 16.0);
        assert_eq!("n/8".parse::<FRule>().unwrap().eval(256), 32.0);
        assert_eq!("n/1000".parse::<FRule>().unwrap().eval(10), 1.0);
        for bad in ["cube", "const:", "n/0", "const:-1"] {
            assert!(bad.parse::<FRule>().is_err(), "{bad}");
        }
        assert_eq!(FRule::Div(4.0).to_string(), "n/4");
    }

    #[test]
    fn csv_round_trip() {
        let mut rows = synthetic(1.0);
        rows[0].algo = Algo::Approx;
        rows[0].f = Some(16.0);
        rows[0].worst_ratio = Some(1.5);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.lines().nth(2).unwrap().starts_with("bounded,64,4,1,,"));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn small_bench() {
        let cfg = BenchConfig::from_json(r#"{"algo":"bounded","ns":[16,24],"reps":2}"#).unwrap();
        let rows = run_bench(&cfg, 7).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.correct && r.queries_distinct <= (r.n * (r.n - 1) / 2) as u64));
        let again = run_bench(&cfg, 7).unwrap();
        let strip = |v: &[BenchRecord]| v.iter().map(|r| BenchRecord { wall_ms: 0.0, ..r.clone() }).collect::<Vec<_>>();
        assert_eq!(strip(&rows), strip(&again));

        let approx = BenchConfig::from_json(r#"{"algo":"approx","ns":[30],"reps":2,"f_rule":"sqrt"}"#).unwrap();
        for r in run_bench(&approx, 1).unwrap() {
            assert!(r.correct && r.worst_ratio.unwrap() <= r.f.unwrap());
        }
        assert!(BenchConfig::from_json(r#"{"algo":"approx","ns":[30],"reps":2}"#).is_err());
    }
}
