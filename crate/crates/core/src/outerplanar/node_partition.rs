//! Splitting a self-contained set at a vertex, and ordering a non-cut
//! vertex's neighbors along the outer face.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::DistanceOracle;

/// `U` split at `pivot`: one part per component of `G[U] - pivot`, each with
/// the pivot added back. Parts are sorted and ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePartition {
    pub pivot: Vertex,
    pub parts: Vec<Vec<Vertex>>,
}

impl NodePartition {
    /// Index of the part holding `v`. For the pivot itself this is the first part.
    pub fn part_containing(&self, v: Vertex) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }

    pub fn largest(&self) -> usize {
        let mut best = 0;
        for (i, p) in self.parts.iter().enumerate() {
            if p.len() > self.parts[best].len() {
                best = i;
            }
        }
        best
    }
}

/// Result of probing every member of `U` against the pivot's neighbors.
struct NeighborScan {
    neighbors: Vec<Vertex>,
    /// Index into `neighbors` of one nearest neighbor, per member of `U`
    /// (unused for the pivot).
    nearest: Vec<usize>,
    /// Every nearest-neighbor set, as indices into `neighbors`.
    nearest_sets: Vec<Vec<usize>>,
    /// Pairs of neighbor indices found to be consecutive.
    pairs: Vec<(usize, usize)>,
}

/// Queries `U x {x}` and `U x Y` and records the consecutive-neighbor
/// evidence: two nearest neighbors tie, or one is nearest and another is
/// exactly one step further.
fn scan<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, set: &[Vertex]) -> Result<NeighborScan> {
    let to_x = oracle.query_column(set, x)?;
    let neighbors: Vec<Vertex> = set.iter().zip(&to_x).filter(|&(_, &d)| d == 1).map(|(&u, _)| u).collect();
    let columns = neighbors.iter().map(|&y| oracle.query_column(set, y)).collect::<Result<Vec<_>>>()?;

    let mut nearest = vec![usize::MAX; set.len()];
    let mut nearest_sets = vec![Vec::new(); set.len()];
    let mut pairs = Vec::new();
    if neighbors.is_empty() {
        return Ok(NeighborScan { neighbors, nearest, nearest_sets, pairs });
    }
    for (idx, &u) in set.iter().enumerate() {
        if u == x {
            continue;
        }
        let d_u = columns.iter().map(|c| c[idx]).min().expect("neighbors is non-empty");
        let closest: Vec<usize> = (0..neighbors.len()).filter(|&j| columns[j][idx] == d_u).collect();
        match closest.as_slice() {
            [a, b] => pairs.push((*a, *b)),
            [a] => {
                for (j, c) in columns.iter().enumerate() {
                    if c[idx] == d_u + 1 {
                        pairs.push((*a, j));
                    }
                }
            }
            _ => {}
        }
        nearest[idx] = closest[0];
        nearest_sets[idx] = closest;
    }
    Ok(NeighborScan { neighbors, nearest, nearest_sets, pairs })
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions the self-contained set `set` (sorted) by the vertex `x`.
///
/// Neighbors of `x` are grouped with a disjoint-set over the consecutive pairs
/// found by the scan; every other vertex joins the group holding its nearest
/// neighbors of `x`.
pub fn partition_by_node<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, set: &[Vertex]) -> Result<NodePartition> {
    if set.binary_search(&x).is_err() {
        return Err(Error::InvalidArgument(format!("pivot {x} is not in the set")));
    }
    let scan = scan(oracle, x, set)?;
    if scan.neighbors.is_empty() {
        if set.len() > 1 {
            return Err(Error::Structural(format!("{x} has no neighbor inside a set of {} vertices", set.len())));
        }
        return Ok(NodePartition { pivot: x, parts: vec![vec![x]] });
    }

    let mut parent: Vec<usize> = (0..scan.neighbors.len()).collect();
    for &(a, b) in &scan.pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let roots: Vec<usize> = (0..scan.neighbors.len()).map(|j| find(&mut parent, j)).collect();
    let mut class_of_root = vec![usize::MAX; roots.len()];
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    for &r in &roots {
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = parts.len();
            parts.push(vec![x]);
        }
    }
    for (idx, &u) in set.iter().enumerate() {
        if u == x {
            continue;
        }
        let class = class_of_root[roots[scan.nearest[idx]]];
        if scan.nearest_sets[idx].iter().any(|&j| class_of_root[roots[j]] != class) {
            return Err(Error::Structural(format!("{u} is nearest to neighbors of {x} in different components")));
        }
        parts[class].push(u);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    Ok(NodePartition { pivot: x, parts })
}

/// Neighbors of the non-cut vertex `x` in `set`, ordered so that each
/// adjacent pair is consecutive. The order is unique up to reversal; the
/// endpoint with the smaller id comes first.
pub fn neighbors_in_order<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, set: &[Vertex]) -> Result<Vec<Vertex>> {
    if set.binary_search(&x).is_err() {
        return Err(Error::InvalidArgument(format!("vertex {x} is not in the set")));
    }
    let scan = scan(oracle, x, set)?;
    let lambda = scan.neighbors.len();
    if lambda <= 1 {
        return Ok(scan.neighbors);
    }
    let mut adj = vec![Vec::new(); lambda];
    for &(a, b) in &scan.pairs {
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let no_order = || Error::Structural(format!("neighbors of {x} admit no consecutive ordering"));
    if adj.iter().any(|l| l.is_empty() || l.len() > 2) {
        return Err(no_order());
    }
    let start = (0..lambda).filter(|&j| adj[j].len() == 1).min_by_key(|&j| scan.neighbors[j]).ok_or_else(no_order)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
        if order.len() > lambda {
            return Err(no_order());
        }
    }
    if order.len() != lambda {
        return Err(no_order());
    }
    Ok(order.into_iter().map(|j| scan.neighbors[j]).collect())
}
