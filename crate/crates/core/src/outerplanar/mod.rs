//! Reconstruction of bounded-degree outerplanar graphs by recursive balanced
//! partitioning into self-contained sets.
//!
//! A set `U` is self-contained when every shortest path between two of its
//! members stays inside `U`. All subroutines take such a set as a sorted
//! vertex slice and learn about it only through the oracle.

mod balanced;
mod edge_partition;
mod node_partition;
mod polygon;
mod shortest_path;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use balanced::{balanced_partition, BalancedPartition, MIN_BALANCED_SIZE};
pub use edge_partition::{partition_by_edge, EdgeSides};
pub use node_partition::{neighbors_in_order, partition_by_node, NodePartition};
pub use polygon::{find_polygon, partition_by_polygon, Polygon, PolygonPartition};
pub use shortest_path::shortest_path;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Vertex};
use crate::oracle::DistanceOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BalancedPartitionConfig {
    /// Largest allowed part, as a fraction of the set. In `(0.7, 1)`.
    pub beta: f64,
    /// `C` in the number of sampled paths, `ceil(C * ln |U|)`.
    pub sampling_constant: f64,
    /// Failed samplings in a row before `beta` is relaxed.
    pub max_samplings: usize,
}

impl Default for BalancedPartitionConfig {
    fn default() -> Self {
        BalancedPartitionConfig { beta: 0.9, sampling_constant: DEFAULT_SAMPLING_CONSTANT, max_samplings: 50 }
    }
}

/// Smallest value the configuration accepts; larger values sample more paths
/// per split without improving balance in practice.
pub const DEFAULT_SAMPLING_CONSTANT: f64 = 1.0;

impl BalancedPartitionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.7 && self.beta < 1.0) {
            return Err(Error::InvalidArgument(format!("beta must lie in (0.7, 1), got {}", self.beta)));
        }
        if self.sampling_constant.is_nan() || self.sampling_constant < 1.0 {
            return Err(Error::InvalidArgument(format!("sampling constant must be at least 1, got {}", self.sampling_constant)));
        }
        if self.max_samplings == 0 {
            return Err(Error::InvalidArgument("max_samplings must be positive".into()));
        }
        Ok(())
    }
}

/// Queries every pair of `set` and keeps the adjacent ones.
pub fn exhaustive_reconstruct<O: DistanceOracle + ?Sized>(oracle: &mut O, set: &[Vertex]) -> Result<EdgeSet> {
    let mut edges = EdgeSet::new();
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if oracle.query(u, v)? == 1 {
                edges.insert(u, v);
            }
        }
    }
    Ok(edges)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OuterplanarRun {
    pub edges: EdgeSet,
    /// Deepest recursion level reached; the whole vertex set is level 0.
    pub depth: usize,
    pub partitions: usize,
    pub samplings: usize,
    pub base_cases: usize,
}

/// Reconstructs a connected outerplanar graph on `0..n`: sets of fewer than
/// ten vertices are queried exhaustively, larger ones are split with
/// [`balanced_partition`] and each part handled in turn.
pub fn reconstruct_outerplanar<O, R>(oracle: &mut O, cfg: &BalancedPartitionConfig, rng: &mut R) -> Result<OuterplanarRun>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    cfg.validate()?;
    let n = oracle.vertex_count();
    let mut run = OuterplanarRun { edges: EdgeSet::new(), depth: 0, partitions: 0, samplings: 0, base_cases: 0 };
    let mut stack: Vec<(Vec<Vertex>, usize)> = vec![((0..n).collect(), 0)];
    while let Some((set, depth)) = stack.pop() {
        run.depth = run.depth.max(depth);
        if set.len() < MIN_BALANCED_SIZE {
            run.edges.extend_from(&exhaustive_reconstruct(oracle, &set)?);
            run.base_cases += 1;
            continue;
        }
        let split = balanced_partition(oracle, &set, cfg, rng)?;
        run.partitions += 1;
        run.samplings += split.samplings;
        // Reverse so parts are processed in order; keeps query order stable.
        for part in split.parts.into_iter().rev() {
            stack.push((part, depth + 1));
        }
    }
    Ok(run)
}

// Sorted-slice set helpers.

pub(crate) fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn union(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.binary_search(v).is_err()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{cycle, f6, path};
    use crate::graph::Graph;
    use crate::oracle::CountingOracle;
    use crate::seed::{phase_rng, stream};

    #[test]
    fn set_helpers() {
        assert_eq!(intersect(&[1, 3, 5, 7], &[3, 4, 5]), vec![3, 5]);
        assert_eq!(union(&[1, 5], &[0, 5, 9]), vec![0, 1, 5, 9]);
        assert_eq!(difference(&[1, 2, 3, 4], &[2, 4]), vec![1, 3]);
    }

    #[test]
    fn exhaustive_small() {
        let mut o = CountingOracle::for_graph(&path(2)).unwrap();
        assert_eq!(exhaustive_reconstruct(&mut o, &[0, 1]).unwrap().len(), 1);
        assert!(exhaustive_reconstruct(&mut o, &[1]).unwrap().is_empty());
        let g = f6();
        let mut o = CountingOracle::for_graph(&g).unwrap();
        assert_eq!(exhaustive_reconstruct(&mut o, &(0..6).collect::<Vec<_>>()).unwrap(), g.edge_set());
        assert!(o.stats().distinct <= 15);
    }

    fn exact(g: &Graph, seed: u64) -> OuterplanarRun {
        let mut o = CountingOracle::for_graph(g).unwrap();
        let mut rng = phase_rng(seed, stream::PARTITION);
        let run = reconstruct_outerplanar(&mut o, &BalancedPartitionConfig::default(), &mut rng).unwrap();
        assert_eq!(run.edges, g.edge_set());
        run
    }

    #[test]
    fn small_graphs_short_circuit() {
        let run = exact(&f6(), 0);
        assert_eq!((run.partitions, run.base_cases), (0, 1));
    }

    #[test]
    fn paths_and_cycles() {
        for n in [10, 17, 40] {
            exact(&path(n), n as u64);
            exact(&cycle(n), n as u64);
        }
    }

    #[test]
    fn bad_config() {
        let cfg = BalancedPartitionConfig { beta: 0.5, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = BalancedPartitionConfig { sampling_constant: 0.5, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
