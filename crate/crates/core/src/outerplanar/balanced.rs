use std::collections::BTreeMap;

use rand::Rng;

use super::edge_partition::{partition_by_edge, EdgeSides};
use super::node_partition::{neighbors_in_order, partition_by_node};
use super::polygon::{partition_by_polygon, polygon_in_wedge};
use super::shortest_path::shortest_path;
use super::{difference, intersect, union, BalancedPartitionConfig};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::DistanceOracle;

/// Smallest set the balanced partition accepts.
pub const MIN_BALANCED_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct BalancedPartition {
    pub parts: Vec<Vec<Vertex>>,
    /// Samplings drawn, including the successful one.
    pub samplings: usize,
    /// Balance bound the result satisfies (the configured one unless
    /// repeated failures forced it up).
    pub beta: f64,
}

/// Partitions the self-contained set `set` (sorted, at least
/// [`MIN_BALANCED_SIZE`] vertices) into self-contained parts of at most
/// `beta * |set|` vertices each, covering every edge.
///
/// Each sampling picks a vertex lying on many sampled shortest paths and
/// tries to split around it, its neighbors, and finally a polygon through
/// it. A sampling that leaves some part too large is discarded. After
/// `max_samplings` discards in a row `beta` moves halfway towards 1.
pub fn balanced_partition<O, R>(oracle: &mut O, set: &[Vertex], cfg: &BalancedPartitionConfig, rng: &mut R) -> Result<BalancedPartition>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    cfg.validate()?;
    let size = set.len();
    if size < MIN_BALANCED_SIZE {
        return Err(Error::InvalidArgument(format!("balanced partition needs at least {MIN_BALANCED_SIZE} vertices, got {size}")));
    }
    let omega = (cfg.sampling_constant * (size as f64).ln()).ceil().max(1.0) as usize;
    let mut beta = cfg.beta;
    let mut failures = 0;
    let mut samplings = 0;
    loop {
        samplings += 1;
        let limit = (beta * size as f64).floor() as usize;
        if let Some(mut parts) = attempt(oracle, set, limit, omega, rng)? {
            parts.retain(|p| p.len() > 1);
            return Ok(BalancedPartition { parts, samplings, beta });
        }
        failures += 1;
        if failures >= cfg.max_samplings {
            if beta >= 1.0 - 1.0 / size as f64 {
                return Err(Error::Structural(format!("no balanced partition of {size} vertices after {samplings} samplings")));
            }
            beta = (1.0 + beta) / 2.0;
            failures = 0;
        }
    }
}

/// The vertex on the most sampled shortest paths, lowest id on ties.
fn busiest_vertex<O, R>(oracle: &mut O, set: &[Vertex], omega: usize, rng: &mut R) -> Result<Vertex>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    let draws: Vec<Vertex> = (0..2 * omega).map(|_| set[rng.gen_range(0..set.len())]).collect();
    let mut hits: BTreeMap<Vertex, usize> = BTreeMap::new();
    for i in 0..omega {
        for v in shortest_path(oracle, draws[i], draws[omega + i], set)? {
            *hits.entry(v).or_default() += 1;
        }
    }
    let mut best = (0, set[0]);
    for (&v, &c) in &hits {
        if c > best.0 {
            best = (c, v);
        }
    }
    Ok(best.1)
}

/// One sampling. `None` means some candidate part was too large.
fn attempt<O, R>(oracle: &mut O, set: &[Vertex], limit: usize, omega: usize, rng: &mut R) -> Result<Option<Vec<Vec<Vertex>>>>
where
    O: DistanceOracle + ?Sized,
    R: Rng + ?Sized,
{
    let x = busiest_vertex(oracle, set, omega, rng)?;

    let at_x = partition_by_node(oracle, x, set)?;
    if at_x.parts.iter().all(|p| p.len() <= limit) {
        return Ok(Some(at_x.parts));
    }
    let d = at_x.parts[at_x.largest()].clone();
    let v0 = union(&difference(set, &d), &[x]);

    let ys = neighbors_in_order(oracle, x, &d)?;
    if ys.len() == 1 {
        return Ok(None);
    }

    let mut vs = vec![v0];
    let mut t = d;
    for &y in &ys {
        let at_y = partition_by_node(oracle, y, set)?;
        let keep = &at_y.parts[at_y.part_containing(x).expect("x is in the set")];
        let v = union(&difference(set, keep), &[y]);
        if v.len() > limit {
            return Ok(None);
        }
        vs.push(v);
        t = intersect(&t, keep);
    }

    let cuts: Vec<EdgeSides> = ys.iter().map(|&y| partition_by_edge(oracle, x, y, &t)).collect::<Result<_>>()?;
    let mut wedges = Vec::with_capacity(ys.len() - 1);
    for i in 0..ys.len() - 1 {
        let a = side_holding(&cuts[i], ys[i + 1])?;
        let b = side_holding(&cuts[i + 1], ys[i])?;
        wedges.push(intersect(a, b));
    }
    let mut seen = Vec::new();
    for w in &wedges {
        seen = union(&seen, w);
    }
    if seen.len() != t.len() {
        return Err(Error::Structural(format!("the wedges at {x} miss {} vertices", t.len() - seen.len())));
    }

    let Some(j) = wedges.iter().position(|w| w.len() > limit) else {
        wedges.extend(vs);
        return Ok(Some(wedges));
    };
    let poly = polygon_in_wedge(oracle, x, ys[j], ys[j + 1], &wedges[j])?;
    let split = partition_by_polygon(oracle, &poly, set)?;
    if split.ws.iter().chain(&split.rs).any(|p| p.len() > limit) {
        return Ok(None);
    }
    let mut parts = split.rs;
    parts.extend(split.ws);
    Ok(Some(parts))
}

fn side_holding(cut: &EdgeSides, v: Vertex) -> Result<&[Vertex]> {
    let side = cut.side_of(v).ok_or_else(|| Error::Structural(format!("{v} lies on neither side of ({},{})", cut.x, cut.y)))?;
    Ok(cut.side(side))
}
