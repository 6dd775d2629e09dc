//! Splitting a self-contained set along an edge `(x, y)`.
//!
//! After dropping the pieces that hang off `x` or `y` alone, both endpoints
//! are non-cut and appear once on the outer face, which they cut into two
//! segments. Each vertex is placed on a side by looking at which neighbor of
//! `x` (or of `y`, whichever endpoint is closer) it is nearest to.

use super::node_partition::{neighbors_in_order, partition_by_node};
use super::{intersect, Side};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::DistanceOracle;

/// The two sides of an edge. Both contain `x` and `y`; vertices hanging off
/// only `x` or only `y` belong to neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSides {
    pub x: Vertex,
    pub y: Vertex,
    pub right: Vec<Vertex>,
    pub left: Vec<Vertex>,
}

impl EdgeSides {
    /// The side holding `v`, for `v` other than the endpoints.
    pub fn side_of(&self, v: Vertex) -> Option<Side> {
        if v == self.x || v == self.y {
            None
        } else if self.right.binary_search(&v).is_ok() {
            Some(Side::Right)
        } else if self.left.binary_search(&v).is_ok() {
            Some(Side::Left)
        } else {
            None
        }
    }

    pub fn side(&self, side: Side) -> &[Vertex] {
        match side {
            Side::Right => &self.right,
            Side::Left => &self.left,
        }
    }

    /// Vertices other than `x` and `y` that lie on either side.
    pub fn trimmed(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.right.iter().chain(&self.left).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

struct Orientation<'a> {
    x: Vertex,
    y: Vertex,
    around_x: &'a [Vertex],
    around_y: &'a [Vertex],
    y_pos: usize,
    x_pos: usize,
}

impl Orientation<'_> {
    /// Side by the neighbors of `x`. Only meaningful when `u` is at least as
    /// close to `x` as to `y`.
    fn via_x<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, u: Vertex) -> Result<Side> {
        let best = nearest(oracle, self.around_x, u)?;
        if best == self.y_pos {
            return Err(Error::Structural(format!("{u} is nearest to {} through {}", self.x, self.y)));
        }
        Ok(if best < self.y_pos { Side::Right } else { Side::Left })
    }

    fn via_y<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, u: Vertex) -> Result<Side> {
        let best = nearest(oracle, self.around_y, u)?;
        if best == self.x_pos {
            return Err(Error::Structural(format!("{u} is nearest to {} through {}", self.y, self.x)));
        }
        Ok(if best < self.x_pos { Side::Left } else { Side::Right })
    }

    fn classify<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, u: Vertex) -> Result<Side> {
        if oracle.query(self.x, u)? <= oracle.query(self.y, u)? {
            self.via_x(oracle, u)
        } else {
            self.via_y(oracle, u)
        }
    }
}

/// Position of the first entry of `around` closest to `u`.
fn nearest<O: DistanceOracle + ?Sized>(oracle: &mut O, around: &[Vertex], u: Vertex) -> Result<usize> {
    let mut best = (u32::MAX, 0);
    for (k, &z) in around.iter().enumerate() {
        let d = oracle.query(z, u)?;
        if d < best.0 {
            best = (d, k);
        }
    }
    Ok(best.1)
}

/// Splits `set` along the edge `(x, y)`.
///
/// The neighbor orders of `x` and `y` are each only known up to reversal.
/// They are aligned by placing one neighbor `p` of `y` (next to `x` in `y`'s
/// order) through the neighbors of `x`: either directly, or through a witness
/// `u` that is placed via `x` and whose shortest path to `p` avoids both
/// endpoints, which puts `u` and `p` on the same side.
pub fn partition_by_edge<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, y: Vertex, set: &[Vertex]) -> Result<EdgeSides> {
    if oracle.query(x, y)? != 1 {
        return Err(Error::InvalidArgument(format!("{x} and {y} are not adjacent")));
    }
    let by_x = partition_by_node(oracle, x, set)?;
    let by_y = partition_by_node(oracle, y, set)?;
    let kept_x = &by_x.parts[by_x.part_containing(y).ok_or_else(|| Error::InvalidArgument(format!("{y} is not in the set")))?];
    let kept_y = &by_y.parts[by_y.part_containing(x).expect("x is in the set")];
    let inner = intersect(kept_x, kept_y);

    let mut pair = vec![x, y];
    pair.sort_unstable();
    if inner.len() == 2 {
        return Ok(EdgeSides { x, y, right: pair.clone(), left: pair });
    }

    let around_x = neighbors_in_order(oracle, x, &inner)?;
    let mut around_y = neighbors_in_order(oracle, y, &inner)?;
    let y_pos = around_x.iter().position(|&v| v == y).expect("y neighbors x");
    let mut x_pos = around_y.iter().position(|&v| v == x).expect("x neighbors y");

    let (probe, expect_if_aligned) = if x_pos + 1 < around_y.len() {
        (around_y[x_pos + 1], Side::Right)
    } else if x_pos > 0 {
        (around_y[x_pos - 1], Side::Left)
    } else {
        return Err(Error::Structural(format!("{y} has no neighbor besides {x} in a set of {} vertices", inner.len())));
    };
    let probe_side = {
        let orient = Orientation { x, y, around_x: &around_x, around_y: &around_y, y_pos, x_pos };
        probe_side(oracle, &orient, probe, &inner)?
    };
    if probe_side != expect_if_aligned {
        around_y.reverse();
        x_pos = around_y.len() - 1 - x_pos;
    }

    let orient = Orientation { x, y, around_x: &around_x, around_y: &around_y, y_pos, x_pos };
    let mut right = pair.clone();
    let mut left = pair;
    for &u in &inner {
        if u == x || u == y {
            continue;
        }
        match orient.classify(oracle, u)? {
            Side::Right => right.push(u),
            Side::Left => left.push(u),
        }
    }
    right.sort_unstable();
    left.sort_unstable();
    Ok(EdgeSides { x, y, right, left })
}

fn probe_side<O: DistanceOracle + ?Sized>(oracle: &mut O, orient: &Orientation<'_>, probe: Vertex, inner: &[Vertex]) -> Result<Side> {
    let (x, y) = (orient.x, orient.y);
    let px = oracle.query(x, probe)?;
    let py = oracle.query(y, probe)?;
    if px <= py {
        return orient.via_x(oracle, probe);
    }
    for &u in inner {
        if u == x || u == y {
            continue;
        }
        let (ux, uy) = (oracle.query(u, x)?, oracle.query(u, y)?);
        if ux > uy {
            continue;
        }
        let up = oracle.query(u, probe)?;
        if up < (ux + px).min(uy + py) {
            return orient.via_x(oracle, u);
        }
    }
    Err(Error::Structural(format!("cannot orient the neighbors of {y} against those of {x}")))
}
