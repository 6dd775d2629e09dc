//! Hidden test instances: bounded-degree connected graphs, outerplanar graphs
//! built around a boundary cycle, random trees, and the layered trees used
//! for the approximate-reconstruction lower bound.
//!
//! Distributions are a choice of this crate, not canonical:
//!
//! * `bounded`: a random recursive tree with degree cap `delta`, then `n`
//!   attempts to add a uniform random pair whose endpoints both have spare
//!   degree.
//! * `outerplanar`: a boundary cycle over `k` vertices (`k` uniform in
//!   `3..=n`, or `k = n` when `delta = 2`), `k` attempts at a uniform
//!   non-crossing chord, then the remaining vertices hung off the structure as
//!   leaves or, one time in four, as short pendant cycles.
//! * `tree`: a random recursive tree with degree cap.
//!
//! All randomness comes from [`seed::phase_rng`] on the generator stream and
//! labels are shuffled at the end, so vertex ids carry no structure.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::seed::{phase_rng, stream, RunRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Bounded,
    Outerplanar,
    Tree,
    Lowerbound,
}

/// Everything needed to regenerate an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default = "default_delta")]
    pub delta: usize,
    #[serde(default)]
    pub seed: u64,
    /// Lower-bound family only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `f` permutations of `1..=k`; drawn from `seed` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perms: Option<Vec<Vec<usize>>>,
}

fn default_delta() -> usize {
    4
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match self.kind {
            GenKind::Bounded => gen_bounded_degree(self.n, self.delta, self.seed),
            GenKind::Outerplanar => Ok(gen_outerplanar(self.n, self.delta, self.seed)?.graph),
            GenKind::Tree => gen_tree(self.n, self.delta, self.seed),
            GenKind::Lowerbound => {
                let f = self.f.ok_or_else(|| Error::InvalidArgument("lowerbound needs f".into()))?;
                let k = self.k.ok_or_else(|| Error::InvalidArgument("lowerbound needs k".into()))?;
                let perms = match &self.perms {
                    Some(p) => p.clone(),
                    None => random_permutations(f, k, self.seed),
                };
                gen_lower_bound_tree(f, k, &perms)
            }
        }
    }
}

fn check_size(n: usize, delta: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Infeasible("n must be at least 1".into()));
    }
    if n == 2 && delta < 1 {
        return Err(Error::Infeasible("two vertices need delta >= 1".into()));
    }
    if n >= 3 && delta < 2 {
        return Err(Error::Infeasible(format!("a connected graph on {n} vertices needs delta >= 2")));
    }
    Ok(())
}

/// Degree bookkeeping shared by the generators.
struct Builder {
    degree: Vec<usize>,
    edges: Vec<(Vertex, Vertex)>,
    /// Vertices already placed with spare degree; order is irrelevant.
    open: Vec<Vertex>,
    delta: usize,
}

impl Builder {
    fn new(n: usize, delta: usize) -> Self {
        Self { degree: vec![0; n], edges: Vec::new(), open: Vec::new(), delta }
    }

    fn place(&mut self, v: Vertex) {
        if self.degree[v] < self.delta {
            self.open.push(v);
        }
    }

    fn connect(&mut self, u: Vertex, v: Vertex) {
        self.edges.push((u, v));
        for w in [u, v] {
            self.degree[w] += 1;
            if self.degree[w] == self.delta {
                if let Some(pos) = self.open.iter().position(|&x| x == w) {
                    self.open.swap_remove(pos);
                }
            }
        }
    }

    fn random_open(&self, rng: &mut RunRng) -> Vertex {
        *self.open.choose(rng).expect("a vertex with spare degree always exists")
    }

    fn grow_tree(&mut self, order: &[Vertex], rng: &mut RunRng) {
        let mut iter = order.iter();
        if let Some(&root) = iter.next() {
            self.place(root);
        }
        for &v in iter {
            let parent = self.random_open(rng);
            self.connect(parent, v);
            self.place(v);
        }
    }

    fn finish(self, n: usize, rng: &mut RunRng) -> Result<Graph> {
        let mut labels: Vec<Vertex> = (0..n).collect();
        labels.shuffle(rng);
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (labels[u], labels[v])).collect();
        Graph::from_edges(n, &edges)
    }
}

/// Random connected graph with maximum degree `delta`.
pub fn gen_bounded_degree(n: usize, delta: usize, seed: u64) -> Result<Graph> {
    check_size(n, delta)?;
    let mut rng = phase_rng(seed, stream::GENERATOR);
    let mut b = Builder::new(n, delta);
    let order: Vec<Vertex> = (0..n).collect();
    b.grow_tree(&order, &mut rng);
    let mut present: std::collections::HashSet<(Vertex, Vertex)> = b.edges.iter().map(|&(u, v)| crate::graph::normalize(u, v)).collect();
    if n >= 3 {
        for _ in 0..n {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || b.degree[u] >= delta || b.degree[v] >= delta {
                continue;
            }
            if present.insert(crate::graph::normalize(u, v)) {
                b.connect(u, v);
            }
        }
    }
    b.finish(n, &mut rng)
}

/// Random tree with maximum degree `delta`.
pub fn gen_tree(n: usize, delta: usize, seed: u64) -> Result<Graph> {
    check_size(n, delta)?;
    let mut rng = phase_rng(seed, stream::GENERATOR);
    let mut b = Builder::new(n, delta);
    let order: Vec<Vertex> = (0..n).collect();
    b.grow_tree(&order, &mut rng);
    b.finish(n, &mut rng)
}

/// A generated outerplanar graph together with its construction certificate.
#[derive(Clone, Debug)]
pub struct OuterplanarInstance {
    pub graph: Graph,
    /// Vertices of the boundary cycle in circular order (empty when `n < 3`).
    pub boundary: Vec<Vertex>,
    /// Chords as pairs of positions into `boundary`, `i < j`.
    pub chords: Vec<(usize, usize)>,
}

/// Two chords given by circular positions cross iff their endpoints
/// interleave strictly.
pub fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Random connected outerplanar graph with maximum degree `delta`.
pub fn gen_outerplanar(n: usize, delta: usize, seed: u64) -> Result<OuterplanarInstance> {
    check_size(n, delta)?;
    let mut rng = phase_rng(seed, stream::GENERATOR);
    if n < 3 {
        let edges: Vec<_> = if n == 2 { vec![(0, 1)] } else { vec![] };
        return Ok(OuterplanarInstance { graph: Graph::from_edges(n, &edges)?, boundary: vec![], chords: vec![] });
    }
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(&mut rng);
    let k = if delta == 2 { n } else { rng.gen_range(3..=n) };

    let mut b = Builder::new(n, delta);
    for i in 0..k {
        b.connect(i, (i + 1) % k);
    }
    let mut chords: Vec<(usize, usize)> = Vec::new();
    if k >= 4 {
        for _ in 0..k {
            let i = rng.gen_range(0..k);
            let j = (i + rng.gen_range(2..=k - 2)) % k;
            let chord = (i.min(j), i.max(j));
            if b.degree[chord.0] >= delta || b.degree[chord.1] >= delta {
                continue;
            }
            if chords.iter().any(|&c| c == chord || chords_cross(c, chord)) {
                continue;
            }
            b.connect(chord.0, chord.1);
            chords.push(chord);
        }
    }
    for i in 0..k {
        b.place(i);
    }

    let mut next = k;
    while next < n {
        let remaining = n - next;
        let anchor = b.random_open(&mut rng);
        if remaining >= 2 && b.degree[anchor] + 2 <= delta && rng.gen_ratio(1, 4) {
            let len = rng.gen_range(2..=remaining.min(6));
            let mut prev = anchor;
            for v in next..next + len {
                b.connect(prev, v);
                b.place(v);
                prev = v;
            }
            b.connect(prev, anchor);
            next += len;
        } else {
            b.connect(anchor, next);
            b.place(next);
            next += 1;
        }
    }

    let graph = Graph::from_edges(n, &b.edges.iter().map(|&(u, v)| (labels[u], labels[v])).collect::<Vec<_>>())?;
    let boundary = labels[..k].to_vec();
    Ok(OuterplanarInstance { graph, boundary, chords })
}

/// `f` uniformly random permutations of `1..=k`.
pub fn random_permutations(f: usize, k: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = phase_rng(seed, stream::GENERATOR);
    (0..f)
        .map(|_| {
            let mut p: Vec<usize> = (1..=k).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

/// Vertex id of the `i`-th node (1-based) on `level` (root is level 1) in the
/// layered lower-bound tree with `k` nodes per level.
pub fn lower_bound_vertex(k: usize, level: usize, i: usize) -> Vertex {
    if level == 1 {
        0
    } else {
        1 + (level - 2) * k + (i - 1)
    }
}

/// Layered tree: root `a0`, then `2f` levels of `k` nodes. Levels `2..=f`
/// link straight down, levels `f+1..=2f` link node `i` to node `perms[l-f-1][i]`
/// of the next level. The root is joined to every level-2 node, giving `k`
/// branches that are paths of `2f` nodes.
pub fn gen_lower_bound_tree(f: usize, k: usize, perms: &[Vec<usize>]) -> Result<Graph> {
    if f == 0 || k == 0 {
        return Err(Error::InvalidArgument("f and k must be at least 1".into()));
    }
    if perms.len() != f {
        return Err(Error::InvalidArgument(format!("expected {f} permutations, got {}", perms.len())));
    }
    for p in perms {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (1..=k).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!("{p:?} is not a permutation of 1..={k}")));
        }
    }
    let n = 2 * f * k + 1;
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..=k {
        edges.push((0, lower_bound_vertex(k, 2, i)));
    }
    for level in 2..=2 * f {
        for i in 1..=k {
            let target = if level <= f { i } else { perms[level - f - 1][i - 1] };
            edges.push((lower_bound_vertex(k, level, i), lower_bound_vertex(k, level + 1, target)));
        }
    }
    Graph::from_edges(n, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub max_degree: usize,
    pub degree_ok: bool,
    /// `m <= 2n - 3`, only checked for outerplanar-tagged instances.
    pub edge_bound_ok: Option<bool>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.connected && self.degree_ok && self.edge_bound_ok.unwrap_or(true)
    }
}

/// Simplicity is guaranteed by [`Graph`] itself, so only connectivity, the
/// degree cap and (optionally) the outerplanar edge bound are checked.
pub fn validate(g: &Graph, delta: usize, outerplanar: bool) -> ValidationReport {
    let n = g.n();
    ValidationReport {
        n,
        m: g.m(),
        connected: g.is_connected(),
        max_degree: g.max_degree(),
        degree_ok: g.max_degree() <= delta,
        edge_bound_ok: outerplanar.then(|| n < 2 || g.m() <= 2 * n - 3),
    }
}
