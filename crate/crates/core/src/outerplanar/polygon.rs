//! Polygons: finding the one through two consecutive edges of a vertex, and
//! splitting a self-contained set around one.

use std::collections::HashSet;

use super::edge_partition::partition_by_edge;
use super::node_partition::partition_by_node;
use super::shortest_path::shortest_path;
use super::{difference, intersect, union, Side};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::oracle::DistanceOracle;

/// An induced cycle `(q_0, ..., q_{l-1})`, `l >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon(pub Vec<Vertex>);

impl Polygon {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    fn at(&self, i: usize) -> Vertex {
        self.0[i % self.0.len()]
    }
}

/// The polygon through the edges `(x, yi)` and `(x, yj)`, where `yi` and
/// `yj` are consecutive neighbors of the non-cut vertex `x` in `set`.
/// Starts at `x`, then `yi`, and ends at `yj`.
pub fn find_polygon<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, yi: Vertex, yj: Vertex, set: &[Vertex]) -> Result<Polygon> {
    let wedge = wedge(oracle, x, yi, yj, set)?;
    polygon_in_wedge(oracle, x, yi, yj, &wedge)
}

/// Vertices between the edges `(x, yi)` and `(x, yj)`.
pub(crate) fn wedge<O: DistanceOracle + ?Sized>(oracle: &mut O, x: Vertex, yi: Vertex, yj: Vertex, set: &[Vertex]) -> Result<Vec<Vertex>> {
    let first = partition_by_edge(oracle, x, yi, set)?;
    let second = partition_by_edge(oracle, x, yj, set)?;
    let side_a = first.side_of(yj).ok_or_else(|| Error::Structural(format!("{yj} lies on neither side of ({x},{yi})")))?;
    let side_b = second.side_of(yi).ok_or_else(|| Error::Structural(format!("{yi} lies on neither side of ({x},{yj})")))?;
    Ok(intersect(first.side(side_a), second.side(side_b)))
}

/// Like [`find_polygon`] with the wedge already known.
///
/// The polygon closes through the shortest `yi`-`yj` path avoiding `x`.
/// Its middle vertex `z` is found among vertices whose shortest paths to
/// both `yi` and `yj` can avoid `x`; for those, the two distances add up to
/// at least the length of that path, with equality exactly on it.
pub(crate) fn polygon_in_wedge<O: DistanceOracle + ?Sized>(
    oracle: &mut O,
    x: Vertex,
    yi: Vertex,
    yj: Vertex,
    wedge: &[Vertex],
) -> Result<Polygon> {
    let to_x = oracle.query_column(wedge, x)?;
    let to_i = oracle.query_column(wedge, yi)?;
    let to_j = oracle.query_column(wedge, yj)?;
    let mut best: Option<(u32, Vertex, u32)> = None;
    for (k, &u) in wedge.iter().enumerate() {
        if u == x || to_i[k] > to_x[k] || to_j[k] > to_x[k] {
            continue;
        }
        let sum = to_i[k] + to_j[k];
        if best.is_none_or(|(b, _, _)| sum < b) {
            best = Some((sum, u, to_i[k]));
        }
    }
    let (d, _, _) = best.ok_or_else(|| Error::Structural(format!("no path from {yi} to {yj} avoiding {x}")))?;
    if d == 0 {
        return Err(Error::InvalidArgument(format!("{yi} and {yj} are the same vertex")));
    }
    let z = wedge
        .iter()
        .enumerate()
        .filter(|&(k, &u)| u != x && to_i[k] <= to_x[k] && to_j[k] <= to_x[k] && to_i[k] + to_j[k] == d && to_i[k] == d / 2)
        .map(|(_, &u)| u)
        .min()
        .ok_or_else(|| Error::Structural(format!("no midpoint between {yi} and {yj}")))?;

    let mut cycle = vec![x];
    cycle.extend(shortest_path(oracle, yi, z, wedge)?);
    cycle.extend(&shortest_path(oracle, z, yj, wedge)?[1..]);
    if cycle.len() < 3 {
        return Err(Error::Structural(format!("{yi} and {yj} do not close a polygon with {x}")));
    }
    Ok(Polygon(cycle))
}

/// `U` split around a polygon: `ws[i]` is everything hanging off `q_i`
/// alone (with `q_i`), `rs[i]` is everything beyond the edge
/// `(q_i, q_{i+1})` (with both endpoints).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonPartition {
    pub ws: Vec<Vec<Vertex>>,
    pub rs: Vec<Vec<Vertex>>,
}

struct Splitter<'a> {
    poly: &'a Polygon,
    on_poly: HashSet<Vertex>,
    ws: Vec<Option<Vec<Vertex>>>,
    rs: Vec<Option<Vec<Vertex>>>,
}

impl Splitter<'_> {
    fn others_on_poly(&self, part: &[Vertex], own: &[Vertex]) -> bool {
        part.iter().any(|v| self.on_poly.contains(v) && !own.contains(v))
    }

    /// `W_i` within `set`: parts at `q_i` holding no other polygon vertex.
    fn outgrowth<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, i: usize, set: &[Vertex]) -> Result<Vec<Vertex>> {
        let q = self.poly.at(i);
        let mut w = vec![q];
        for part in partition_by_node(oracle, q, set)?.parts {
            if !self.others_on_poly(&part, &[q]) {
                w = union(&w, &part);
            }
        }
        Ok(w)
    }

    /// `R_i` within `set`: sides of `(q_i, q_{i+1})` holding no other
    /// polygon vertex.
    fn strip<O: DistanceOracle + ?Sized>(&self, oracle: &mut O, i: usize, set: &[Vertex]) -> Result<Vec<Vertex>> {
        let (a, b) = (self.poly.at(i), self.poly.at(i + 1));
        let sides = partition_by_edge(oracle, a, b, set)?;
        let mut r = Vec::new();
        for side in [Side::Right, Side::Left] {
            let part = sides.side(side);
            if !self.others_on_poly(part, &[a, b]) {
                r = union(&r, part);
            }
        }
        if r.is_empty() {
            return Err(Error::Structural(format!("both sides of ({a},{b}) reach the rest of the polygon")));
        }
        Ok(r)
    }

    fn record<O: DistanceOracle + ?Sized>(&mut self, oracle: &mut O, i: usize, set: &[Vertex]) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
        let w = self.outgrowth(oracle, i, set)?;
        let r = self.strip(oracle, i, set)?;
        self.ws[i] = Some(w.clone());
        self.rs[i] = Some(r.clone());
        Ok((w, r))
    }

    /// Fills in `W_s, R_s, ..., W_t, R_t` from `z`, their union.
    fn segment<O: DistanceOracle + ?Sized>(&mut self, oracle: &mut O, s: usize, t: usize, z: &[Vertex]) -> Result<()> {
        if s > t {
            return Ok(());
        }
        let m = (s + t) / 2;
        let (qm, qn) = (self.poly.at(m), self.poly.at(m + 1));
        let (w, r) = self.record(oracle, m, z)?;
        let rest = union(&difference(z, &union(&w, &r)), &sorted_pair(qm, qn));
        let to_m = oracle.query_column(&rest, qm)?;
        let to_n = oracle.query_column(&rest, qn)?;
        let mut before = Vec::new();
        let mut after = Vec::new();
        for (k, &u) in rest.iter().enumerate() {
            match to_m[k].cmp(&to_n[k]) {
                std::cmp::Ordering::Less => before.push(u),
                std::cmp::Ordering::Greater => after.push(u),
                std::cmp::Ordering::Equal => {
                    return Err(Error::Structural(format!("{u} is as close to {qm} as to {qn} inside a polygon segment")));
                }
            }
        }
        if m > s {
            self.segment(oracle, s, m - 1, &before)?;
        }
        self.segment(oracle, m + 1, t, &after)
    }
}

fn sorted_pair(a: Vertex, b: Vertex) -> Vec<Vertex> {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// Splits the self-contained set `set` (sorted) around `poly`.
///
/// The outgrowths and strips at four anchor positions are computed directly;
/// the rest falls into two arcs of the polygon, told apart with two queries
/// per vertex, and each arc is halved recursively.
pub fn partition_by_polygon<O: DistanceOracle + ?Sized>(oracle: &mut O, poly: &Polygon, set: &[Vertex]) -> Result<PolygonPartition> {
    let l = poly.len();
    if l < 3 {
        return Err(Error::InvalidArgument(format!("a polygon needs at least 3 vertices, got {l}")));
    }
    let on_poly: HashSet<Vertex> = poly.vertices().iter().copied().collect();
    if on_poly.len() != l {
        return Err(Error::InvalidArgument("polygon repeats a vertex".into()));
    }
    for i in 0..l {
        let (a, b) = (poly.at(i), poly.at(i + 1));
        if set.binary_search(&a).is_err() {
            return Err(Error::InvalidArgument(format!("polygon vertex {a} is not in the set")));
        }
        if oracle.query(a, b)? != 1 {
            return Err(Error::InvalidArgument(format!("polygon vertices {a} and {b} are not adjacent")));
        }
    }

    let mut sp = Splitter { poly, on_poly, ws: vec![None; l], rs: vec![None; l] };
    let h = l / 2;
    let mut anchors = vec![0, h - 1, h, l - 1];
    anchors.sort_unstable();
    anchors.dedup();
    let mut covered: HashSet<Vertex> = HashSet::new();
    for &i in &anchors {
        let (w, r) = sp.record(oracle, i, set)?;
        covered.extend(w);
        covered.extend(r);
    }

    // Arcs q_1..q_{h-1} and q_{h+1}..q_{l-1}, segments 1..=h-2 and h+1..=l-2.
    let first_arc = h >= 3;
    let second_arc = l >= h + 3;
    let rest: Vec<Vertex> = set.iter().copied().filter(|v| !covered.contains(v)).collect();
    let near_first = oracle.query_column(&rest, poly.at(1))?;
    let near_last = oracle.query_column(&rest, poly.at(l - 1))?;
    let mut z1: Vec<Vertex> = (1..h).map(|i| poly.at(i)).collect();
    let mut z2: Vec<Vertex> = (h + 1..l).map(|i| poly.at(i)).collect();
    for (k, &v) in rest.iter().enumerate() {
        let first = near_first[k] < near_last[k];
        if (first && !first_arc) || (!first && !second_arc) {
            return Err(Error::Structural(format!("{v} is outside every part of the polygon")));
        }
        if first {
            z1.push(v);
        } else {
            z2.push(v);
        }
    }
    // Polygon vertices inside an arc are not covered by the anchors.
    z1.sort_unstable();
    z1.dedup();
    z2.sort_unstable();
    z2.dedup();
    if first_arc {
        sp.segment(oracle, 1, h - 2, &z1)?;
    }
    if second_arc {
        sp.segment(oracle, h + 1, l - 2, &z2)?;
    }

    let ws: Vec<Vec<Vertex>> = sp.ws.into_iter().map(|w| w.expect("every outgrowth is computed")).collect();
    let rs: Vec<Vec<Vertex>> = sp.rs.into_iter().map(|r| r.expect("every strip is computed")).collect();
    let mut seen: HashSet<Vertex> = HashSet::new();
    for part in ws.iter().chain(&rs) {
        seen.extend(part);
    }
    if let Some(v) = set.iter().find(|v| !seen.contains(v)) {
        return Err(Error::Structural(format!("{v} is outside every part of the polygon")));
    }
    Ok(PolygonPartition { ws, rs })
}
