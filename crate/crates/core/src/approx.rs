//! `f`-approximate reconstruction of the metric: an estimate `e` with
//! `e(u,v) <= d(u,v) <= f * e(u,v)` for every pair.
//!
//! Each sampled vertex `u` is queried against everything. Pairs inside the
//! ball `S_u = {v : d(u,v) < f/2}` get estimate 1; a pair `(v, w)` with `v`
//! in the ball and `w` outside gets `d(u,w) - d(u,v)`. Sampling stops once
//! every pair has an estimate. Later samples overwrite earlier estimates;
//! each single assignment already satisfies the bounds.
//!
//! The ball uses `floor(f)`: the upper bound needs `2 d(u,v) <= f - 1` for
//! members `v`, which only follows from `d(u,v) < f/2` when `f` is an integer.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Vertex};
use crate::oracle::DistanceOracle;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxMetric {
    pub n: usize,
    pub f: f64,
    est: Vec<u32>,
}

impl ApproxMetric {
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.est[u * self.n + v]
    }

    /// Builds a metric from explicit estimates, for checking the verifier.
    pub fn from_fn(n: usize, f: f64, mut est: impl FnMut(Vertex, Vertex) -> u32) -> Self {
        let mut m = ApproxMetric { n, f, est: vec![0; n * n] };
        for u in 0..n {
            for v in u + 1..n {
                let e = est(u, v);
                m.est[u * n + v] = e;
                m.est[v * n + u] = e;
            }
        }
        m
    }
}

/// Estimate matrix under construction, with the count of pairs still open.
struct Filling {
    n: usize,
    est: Vec<u32>,
    defined: Vec<bool>,
    open: usize,
}

impl Filling {
    fn new(n: usize) -> Self {
        Filling { n, est: vec![0; n * n], defined: vec![false; n * n], open: n * n.saturating_sub(1) / 2 }
    }

    fn set(&mut self, u: Vertex, v: Vertex, e: u32) {
        let (i, j) = (u * self.n + v, v * self.n + u);
        if !self.defined[i] {
            self.defined[i] = true;
            self.defined[j] = true;
            self.open -= 1;
        }
        self.est[i] = e;
        self.est[j] = e;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxRun {
    pub metric: ApproxMetric,
    /// Vertices sampled, repeats included.
    pub samples: usize,
}

pub fn approx_reconstruct<O, R>(oracle: &mut O, f: f64, rng: &mut R) -> Result<ApproxRun>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    if f.is_nan() || f < 1.0 {
        return Err(Error::InvalidArgument(format!("f must be at least 1, got {f}")));
    }
    let n = oracle.vertex_count();
    let all: Vec<Vertex> = (0..n).collect();
    let mut fill = Filling::new(n);
    let mut samples = 0;
    let radius = f.floor() / 2.0;
    while fill.open > 0 {
        samples += 1;
        let u = rng.gen_range(0..n);
        let du = oracle.query_column(&all, u)?;
        for (v, &d) in du.iter().enumerate() {
            if v != u {
                fill.set(u, v, d);
            }
        }
        let ball: Vec<Vertex> = (0..n).filter(|&v| (du[v] as f64) < radius).collect();
        let mut in_ball = vec![false; n];
        for &v in &ball {
            in_ball[v] = true;
        }
        for &v in &ball {
            if v == u {
                continue;
            }
            for w in 0..n {
                if w == v {
                    continue;
                }
                if in_ball[w] {
                    fill.set(v, w, 1);
                } else {
                    let e = du[w] - du[v];
                    assert!(e >= 1, "d(u,w) - d(u,v) must be positive outside the ball");
                    fill.set(v, w, e);
                }
            }
        }
    }
    Ok(ApproxRun { metric: ApproxMetric { n, f, est: fill.est }, samples })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub est: u32,
    pub dist: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxReport {
    pub ok: bool,
    /// Largest `d / e` over pairs of distinct vertices; 1 when there are none.
    pub worst_ratio: f64,
    pub violations: Vec<Violation>,
}

/// Checks `e <= d <= f * e` on every pair.
pub fn verify_approx(am: &ApproxMetric, truth: &DistanceMatrix) -> Result<ApproxReport> {
    if am.n != truth.n() {
        return Err(Error::InvalidArgument(format!("estimate has {} vertices, metric has {}", am.n, truth.n())));
    }
    let mut worst: f64 = 1.0;
    let mut violations = Vec::new();
    for u in 0..am.n {
        for v in u + 1..am.n {
            let (e, d) = (am.get(u, v), truth.get(u, v));
            if e > 0 {
                worst = worst.max(d as f64 / e as f64);
            }
            if e == 0 || e > d || d as f64 > am.f * e as f64 {
                violations.push(Violation { u, v, est: e, dist: d });
            }
        }
    }
    Ok(ApproxReport {
        ok: violations.is_empty(),
        worst_ratio: if violations.iter().any(|x| x.est == 0) { f64::INFINITY } else { worst },
        violations,
    })
}
