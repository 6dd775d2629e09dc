//! Reconstruction of bounded-degree graphs in two phases: pick a set of
//! centers whose clusters are all small, then search exhaustively inside the
//! neighborhood of each center.
//!
//! The cluster of `w` is `C_w = {v : d(w,v) < d(A,v)}`, the vertices closer to
//! `w` than to every center.
//!
//! With `skip_deducible` on, a query is skipped when the distances already
//! known from the centers' columns settle the only thing the algorithm
//! needs from it: whether `x` is in a cluster, or whether a pair is an edge.
//! The triangle inequality through each center `c` gives
//! `|d(c,u) - d(c,v)| <= d(u,v) <= d(c,u) + d(c,v)`. Outputs and random draws
//! are the same with the flag on or off; only the query count changes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Vertex};
use crate::oracle::DistanceOracle;

/// `d(A, v)` before any center exists.
pub const NO_CENTER: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CenterConfig {
    /// Center rate; `floor(sqrt(n))` when unset.
    pub s: Option<usize>,
    /// `K` in the sample size `T = K log n log log n` (base 2).
    pub k: f64,
    /// Cap on rounds of center selection; `64 * ceil(log2 n)` when unset.
    pub max_while_iters: Option<usize>,
    pub skip_deducible: bool,
}

impl Default for CenterConfig {
    fn default() -> Self {
        CenterConfig { s: None, k: 4.0, max_while_iters: None, skip_deducible: true }
    }
}

impl CenterConfig {
    pub fn rate(&self, n: usize) -> usize {
        self.s.unwrap_or_else(|| (n as f64).sqrt().floor() as usize).max(1)
    }

    /// Samples per cluster estimate, before multiplying by `s`.
    pub fn samples(&self, n: usize) -> usize {
        let l = (n as f64).log2().max(2.0);
        (self.k * l * l.log2()).ceil().max(1.0) as usize
    }

    pub fn iteration_cap(&self, n: usize) -> usize {
        self.max_while_iters.unwrap_or(64 * ((n.max(2) as f64).log2().ceil() as usize))
    }

    fn validate(&self, n: usize) -> Result<()> {
        let s = self.rate(n);
        if s > n {
            return Err(Error::InvalidArgument(format!("s = {s} exceeds n = {n}")));
        }
        if self.k.is_nan() || self.k < 1.0 {
            return Err(Error::InvalidArgument(format!("K must be at least 1, got {}", self.k)));
        }
        Ok(())
    }
}

/// Centers with every vertex's distance to each of them.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterCover {
    pub centers: Vec<Vertex>,
    /// `d(A, v)` per vertex, [`NO_CENTER`] while `A` is empty.
    pub dist_to_centers: Vec<u32>,
    /// Rounds of the selection loop.
    pub iterations: usize,
    columns: Vec<Vec<u32>>,
}

impl CenterCover {
    fn empty(n: usize) -> Self {
        CenterCover { centers: Vec::new(), dist_to_centers: vec![NO_CENTER; n], iterations: 0, columns: Vec::new() }
    }

    /// A cover for a given center set; queries each center against all vertices.
    pub fn from_centers<O: DistanceOracle + ?Sized>(oracle: &mut O, centers: &[Vertex]) -> Result<Self> {
        let mut cover = CenterCover::empty(oracle.vertex_count());
        for &a in centers {
            cover.add(oracle, a)?;
        }
        Ok(cover)
    }

    fn add<O: DistanceOracle + ?Sized>(&mut self, oracle: &mut O, a: Vertex) -> Result<()> {
        let all: Vec<Vertex> = (0..oracle.vertex_count()).collect();
        let col = oracle.query_column(&all, a)?;
        for (d, &x) in self.dist_to_centers.iter_mut().zip(&col) {
            *d = (*d).min(x);
        }
        self.centers.push(a);
        self.columns.push(col);
        Ok(())
    }

    /// Bounds on `d(u, v)` from the triangle inequality through each center.
    fn bounds(&self, u: Vertex, v: Vertex) -> (u32, u32) {
        let mut lo = 0;
        let mut hi = NO_CENTER;
        for col in &self.columns {
            let (a, b) = (col[u], col[v]);
            lo = lo.max(a.abs_diff(b));
            hi = hi.min(a + b);
        }
        (lo, hi)
    }

    /// Whether `d(u, v) < d(A, v)`, i.e. `v` lies in the cluster of `u`.
    fn in_cluster<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, u: Vertex, v: Vertex, skip: bool) -> Result<bool> {
        let limit = self.dist_to_centers[v];
        if skip {
            if u == v {
                return Ok(limit > 0);
            }
            if limit <= 1 {
                return Ok(false);
            }
            let (lo, hi) = self.bounds(u, v);
            if lo >= limit {
                return Ok(false);
            }
            if hi < limit {
                return Ok(true);
            }
        }
        Ok(oracle.query(u, v)? < limit)
    }

    /// Whether `u` and `v` are adjacent.
    fn adjacent<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, u: Vertex, v: Vertex, skip: bool) -> Result<bool> {
        if skip {
            let (lo, hi) = self.bounds(u, v);
            if lo >= 2 {
                return Ok(false);
            }
            if hi <= 1 {
                return Ok(u != v);
            }
        }
        Ok(oracle.query(u, v)? == 1)
    }

    /// True cluster size, for tests and diagnostics that own the full metric.
    pub fn cluster_size(&self, dist: &crate::graph::DistanceMatrix, w: Vertex) -> usize {
        (0..dist.n()).filter(|&v| dist.get(w, v) < self.dist_to_centers[v]).count()
    }
}

/// Picks centers until every remaining candidate's cluster is estimated
/// below `5n/s`. Each round, every candidate joins with probability
/// `s/|W|`, then each candidate's cluster is estimated from `s*T` vertices
/// drawn with replacement.
pub fn modified_center<O, R>(oracle: &mut O, cfg: &CenterConfig, rng: &mut R) -> Result<CenterCover>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    let n = oracle.vertex_count();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("center selection needs at least 2 vertices, got {n}")));
    }
    cfg.validate(n)?;
    let s = cfg.rate(n);
    let draws = s * cfg.samples(n);
    let cap = cfg.iteration_cap(n);
    let mut cover = CenterCover::empty(n);
    let mut candidates: Vec<Vertex> = (0..n).collect();
    while !candidates.is_empty() {
        if cover.iterations == cap {
            return Err(Error::IterationCap(format!("center selection still has {} candidates after {cap} rounds", candidates.len())));
        }
        cover.iterations += 1;
        let p = (s as f64 / candidates.len() as f64).min(1.0);
        let joined: Vec<Vertex> = candidates.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        for a in joined {
            cover.add(oracle, a)?;
        }
        if cover.centers.is_empty() {
            // Every cluster is still all of V; nobody can be dropped yet.
            continue;
        }
        let mut kept = Vec::new();
        for &w in &candidates {
            let mut hits = 0usize;
            for _ in 0..draws {
                let x = rng.gen_range(0..n);
                if cover.in_cluster(oracle, w, x, cfg.skip_deducible)? {
                    hits += 1;
                }
            }
            // hits * n / draws >= 5n / s
            if hits * s >= 5 * draws {
                kept.push(w);
            }
        }
        candidates = kept;
    }
    Ok(cover)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalReconstruction {
    pub edges: EdgeSet,
    /// `(a, D_a)` per center, `D_a` sorted.
    pub regions: Vec<(Vertex, Vec<Vertex>)>,
}

/// For each center `a`: `B_a` is the ball of radius 2 around `a`, `D_a` is
/// `B_a` plus the clusters of its members, and every pair inside `D_a` is
/// checked for adjacency.
pub fn local_reconstruction<O: DistanceOracle + ?Sized>(
    oracle: &mut O,
    cover: &CenterCover,
    skip_deducible: bool,
) -> Result<LocalReconstruction> {
    if cover.centers.is_empty() {
        return Err(Error::InvalidArgument("local reconstruction needs at least one center".into()));
    }
    let n = oracle.vertex_count();
    let mut edges = EdgeSet::new();
    let mut regions = Vec::with_capacity(cover.centers.len());
    let mut member = vec![false; n];
    for (idx, &a) in cover.centers.iter().enumerate() {
        let col = &cover.columns[idx];
        let ball: Vec<Vertex> = (0..n).filter(|&v| col[v] <= 2).collect();
        for &b in &ball {
            member[b] = true;
        }
        for &b in &ball {
            for v in 0..n {
                if member[v] {
                    // Still queried without skipping, as Query(B_a, V) asks.
                    if !skip_deducible {
                        oracle.query(b, v)?;
                    }
                    continue;
                }
                // d(b,v) >= d(a,v) - 2, so v is out of reach unless d(a,v) <= d(A,v) + 1.
                if skip_deducible && col[v] > cover.dist_to_centers[v].saturating_add(1) {
                    continue;
                }
                if cover.in_cluster(oracle, b, v, skip_deducible)? {
                    member[v] = true;
                }
            }
        }
        let region: Vec<Vertex> = (0..n).filter(|&v| member[v]).collect();
        for (i, &u) in region.iter().enumerate() {
            member[u] = false;
            for &v in &region[i + 1..] {
                if cover.adjacent(oracle, u, v, skip_deducible)? {
                    edges.insert(u, v);
                }
            }
        }
        regions.push((a, region));
    }
    Ok(LocalReconstruction { edges, regions })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundedRun {
    pub edges: EdgeSet,
    pub centers: usize,
    pub iterations: usize,
}

/// Center selection followed by local reconstruction. A single vertex has
/// no edges and needs no queries.
pub fn reconstruct_bounded_degree<O, R>(oracle: &mut O, cfg: &CenterConfig, rng: &mut R) -> Result<BoundedRun>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    if oracle.vertex_count() < 2 {
        return Ok(BoundedRun { edges: EdgeSet::new(), centers: 0, iterations: 0 });
    }
    let cover = modified_center(oracle, cfg, rng)?;
    let local = local_reconstruction(oracle, &cover, cfg.skip_deducible)?;
    Ok(BoundedRun { edges: local.edges, centers: cover.centers.len(), iterations: cover.iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_bounded_degree;
    use crate::graph::fixtures::{f6, path};
    use crate::graph::{all_pairs_distances, Graph};
    use crate::oracle::CountingOracle;
    use crate::seed::{phase_rng, stream};

    #[test]
    fn single_edge() {
        let g = path(2);
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let cfg = CenterConfig { s: Some(1), ..Default::default() };
        let run = reconstruct_bounded_degree(&mut o, &cfg, &mut phase_rng(0, stream::CENTERS)).unwrap();
        assert!(run.centers >= 1);
        assert_eq!(run.edges, g.edge_set());
    }

    #[test]
    fn triangle_from_one_center() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        let cover = CenterCover::from_centers(&mut o, &[0]).unwrap();
        let local = local_reconstruction(&mut o, &cover, false).unwrap();
        assert_eq!(local.regions, vec![(0, vec![0, 1, 2])]);
        assert_eq!(local.edges, g.edge_set());
    }

    #[test]
    fn f6_and_path_from_fixed_centers() {
        let g = f6();
        for skip in [false, true] {
            let mut o = CountingOracle::for_graph(&g).unwrap();
            let cover = CenterCover::from_centers(&mut o, &[2]).unwrap();
            assert_eq!(local_reconstruction(&mut o, &cover, skip).unwrap().edges, g.edge_set());
        }
        let g = path(8);
        for skip in [false, true] {
            let mut o = CountingOracle::for_graph(&g).unwrap();
            let cover = CenterCover::from_centers(&mut o, &[0, 7]).unwrap();
            assert_eq!(local_reconstruction(&mut o, &cover, skip).unwrap().edges, g.edge_set());
        }
    }

    #[test]
    fn no_centers_is_an_error() {
        let mut o = CountingOracle::for_graph(&path(3)).unwrap();
        let cover = CenterCover::from_centers(&mut o, &[]).unwrap();
        assert!(matches!(local_reconstruction(&mut o, &cover, true), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn skipping_changes_only_the_count() {
        let g = gen_bounded_degree(64, 4, 7).unwrap();
        let cfg = CenterConfig { s: Some(8), ..Default::default() };
        let mut a = CountingOracle::for_graph(&g).unwrap();
        let mut b = CountingOracle::for_graph(&g).unwrap();
        let ca = modified_center(&mut a, &cfg, &mut phase_rng(3, stream::CENTERS)).unwrap();
        let cb =
            modified_center(&mut b, &CenterConfig { skip_deducible: false, ..cfg.clone() }, &mut phase_rng(3, stream::CENTERS)).unwrap();
        assert_eq!(ca, cb);
        let la = local_reconstruction(&mut a, &ca, true).unwrap();
        let lb = local_reconstruction(&mut b, &cb, false).unwrap();
        assert_eq!(la, lb);
        assert_eq!(la.edges, g.edge_set());
        assert!(a.stats().distinct <= b.stats().distinct);
    }

    #[test]
    fn clusters_end_up_small() {
        let g = gen_bounded_degree(64, 4, 7).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let cfg = CenterConfig { s: Some(8), ..Default::default() };
        let ok = (0..5).any(|seed| {
            let mut o = CountingOracle::for_graph(&g).unwrap();
            let cover = modified_center(&mut o, &cfg, &mut phase_rng(seed, stream::CENTERS)).unwrap();
            (0..64).all(|w| cover.cluster_size(&d, w) <= 6 * 64 / 8)
        });
        assert!(ok);
    }
}
