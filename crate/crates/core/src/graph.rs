//! Ground-truth graphs, exact hop distances and the brute-force checks the
//! reconstruction algorithms are tested against.
//!
//! Vertices are dense ids `0..n`. Labels only exist in files.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest graph on which [`enumerate_all_shortest_paths`] agrees to run.
pub const ENUMERATION_VERTEX_CAP: usize = 24;
/// Largest number of paths [`enumerate_all_shortest_paths`] will return.
pub const ENUMERATION_PATH_CAP: usize = 1_000_000;

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints. Connectivity is not required here; see [`Graph::ensure_connected`].
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !seen.insert(normalize(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj, m: seen.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.bfs_from(0).iter().all(|&d| d != UNREACHED)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn bfs_from(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Parses the plain edge-list format: a header line `n m`, then `m` lines
    /// `u v`. Lines starting with `#` and blank lines are skipped. The graph
    /// must be connected.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse { line: line_no, msg: format!("expected two fields, got {}", fields.len()) });
            }
            let parse = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line: line_no, msg: format!("{s:?}: {e}") });
            let (a, b) = (parse(fields[0])?, parse(fields[1])?);
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a >= n || b >= n {
                        return Err(Error::Parse { line: line_no, msg: format!("edge {a} {b} out of range for n = {n}") });
                    }
                    if a == b {
                        return Err(Error::Parse { line: line_no, msg: format!("self-loop at {a}") });
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse { line: 0, msg: format!("header announces {m} edges, found {}", edges.len()) });
        }
        let g = Graph::from_edges(n, &edges)?;
        g.ensure_connected()?;
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

const UNREACHED: u32 = u32::MAX;

/// Normalized unordered pair with the smaller endpoint first.
pub fn normalize(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Set of undirected edges, each stored as `(min, max)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet(BTreeSet<(Vertex, Vertex)>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        self.0.insert(normalize(u, v))
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.0.contains(&normalize(u, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.0.iter().copied()
    }

    pub fn extend_from(&mut self, other: &EdgeSet) {
        self.0.extend(other.0.iter().copied());
    }
}

impl FromIterator<(Vertex, Vertex)> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = (Vertex, Vertex)>>(iter: I) -> Self {
        let mut set = EdgeSet::new();
        for (u, v) in iter {
            set.insert(u, v);
        }
        set
    }
}

/// All-pairs hop distances, row-major. Stored as `u16` to keep `n = 4096`
/// matrices at 32 MiB.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        u32::from(self.d[u * self.n + v])
    }

    pub fn row(&self, u: Vertex) -> impl Iterator<Item = u32> + '_ {
        self.d[u * self.n..(u + 1) * self.n].iter().map(|&x| u32::from(x))
    }
}

/// Hop distances from `source`; fails if some vertex is unreachable.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Result<Vec<u32>> {
    if source >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: source, n: g.n() });
    }
    let dist = g.bfs_from(source);
    if dist.contains(&UNREACHED) {
        return Err(Error::Disconnected);
    }
    Ok(dist)
}

/// One BFS per vertex. Fine up to roughly ten thousand vertices.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let mut d = vec![0u16; n * n];
    for s in 0..n {
        let row = bfs_distances(g, s)?;
        for (slot, &x) in d[s * n..(s + 1) * n].iter_mut().zip(&row) {
            *slot = u16::try_from(x).map_err(|_| Error::InvalidGraph("diameter exceeds u16".into()))?;
        }
    }
    Ok(DistanceMatrix { n, d })
}

/// Connected components of `G[set] - v`, each sorted, ordered by smallest
/// member. An isolated `v` yields a single empty component so that the count
/// is always at least one.
pub fn components_after_removal(g: &Graph, v: Vertex, set: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &u in set {
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        inside[u] = true;
    }
    if v >= n || !inside[v] {
        return Err(Error::InvalidArgument(format!("pivot {v} is not in the vertex set")));
    }
    inside[v] = false;
    let mut comps = Vec::new();
    let mut seen = vec![false; n];
    let mut members: Vec<Vertex> = set.iter().copied().filter(|&u| u != v).collect();
    members.sort_unstable();
    members.dedup();
    for &start in &members {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    if comps.is_empty() {
        comps.push(Vec::new());
    }
    Ok(comps)
}

/// Every shortest path from `a` to `b`, by exhaustive search along the BFS
/// layers. Test-only oracle: refuses graphs above [`ENUMERATION_VERTEX_CAP`].
pub fn enumerate_all_shortest_paths(g: &Graph, a: Vertex, b: Vertex) -> Result<Vec<Vec<Vertex>>> {
    if g.n() > ENUMERATION_VERTEX_CAP {
        return Err(Error::EnumerationCap(format!("{} vertices exceeds the cap of {ENUMERATION_VERTEX_CAP}", g.n())));
    }
    if a >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: a, n: g.n() });
    }
    let to_b = bfs_distances(g, b)?;
    let mut paths = Vec::new();
    let mut current = vec![a];
    extend_paths(g, &to_b, &mut current, &mut paths)?;
    Ok(paths)
}

fn extend_paths(g: &Graph, to_b: &[u32], current: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) -> Result<()> {
    let last = *current.last().expect("path is never empty");
    if to_b[last] == 0 {
        if out.len() == ENUMERATION_PATH_CAP {
            return Err(Error::EnumerationCap(format!("more than {ENUMERATION_PATH_CAP} paths")));
        }
        out.push(current.clone());
        return Ok(());
    }
    for &w in g.neighbors(last) {
        if to_b[w] + 1 == to_b[last] {
            current.push(w);
            extend_paths(g, to_b, current, out)?;
            current.pop();
        }
    }
    Ok(())
}

/// A set is self-contained when every vertex on every shortest path between
/// two members is itself a member. Checked through the distance-sum
/// characterization, so it runs on graphs of any size.
pub fn is_self_contained(dist: &DistanceMatrix, set: &[Vertex]) -> bool {
    let mut inside = vec![false; dist.n()];
    for &u in set {
        inside[u] = true;
    }
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            let dxy = dist.get(x, y);
            for (w, &ins) in inside.iter().enumerate() {
                if !ins && dist.get(x, w) + dist.get(w, y) == dxy {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// a b c d e f -> 0..6; edges ab ac bc cd de ef fc.
    pub fn f6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2)]).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }
}
