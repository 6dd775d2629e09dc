//! Distance oracles. Reconstruction algorithms only ever see a
//! [`DistanceOracle`]; they have no path back to the hidden graph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{normalize, DistanceMatrix, Graph, Vertex};

/// Answers hop-distance queries on a hidden connected graph.
pub trait DistanceOracle {
    /// Number of vertices of the hidden graph.
    fn vertex_count(&self) -> usize;

    fn query(&mut self, u: Vertex, v: Vertex) -> Result<u32>;

    /// Queries every pair in `a x b`.
    fn query_batch(&mut self, a: &[Vertex], b: &[Vertex]) -> Result<BTreeMap<(Vertex, Vertex), u32>> {
        let mut out = BTreeMap::new();
        for &x in a {
            for &y in b {
                let d = self.query(x, y)?;
                out.insert((x, y), d);
            }
        }
        Ok(out)
    }

    /// Distances from every member of `set` to `v`, aligned with `set`.
    fn query_column(&mut self, set: &[Vertex], v: Vertex) -> Result<Vec<u32>> {
        set.iter().map(|&u| self.query(u, v)).collect()
    }
}

impl<O: DistanceOracle + ?Sized> DistanceOracle for &mut O {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }

    fn query(&mut self, u: Vertex, v: Vertex) -> Result<u32> {
        (**self).query(u, v)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QueryStats {
    /// Every call, repeats and `(u, u)` included.
    pub raw: u64,
    /// Unordered pairs `u != v` asked at least once.
    pub distinct: u64,
    /// Milliseconds since the oracle was created.
    pub wall_ms: f64,
}

/// Wall clock; browsers have no `Instant`, so timings read 0 there.
#[derive(Clone, Copy, Debug)]
struct Clock(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Clock {
    fn now() -> Self {
        Clock(
            #[cfg(not(target_arch = "wasm32"))]
            std::time::Instant::now(),
        )
    }

    fn elapsed_ms(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_secs_f64() * 1e3;
        #[cfg(target_arch = "wasm32")]
        0.0
    }
}

/// Oracle backed by a precomputed distance matrix that counts raw calls and
/// distinct pairs.
#[derive(Clone, Debug)]
pub struct CountingOracle {
    backing: DistanceMatrix,
    seen: Vec<u64>,
    memoize: bool,
    raw: u64,
    distinct: u64,
    started: Clock,
}

impl CountingOracle {
    pub fn new(backing: DistanceMatrix) -> Self {
        let n = backing.n();
        Self { seen: vec![0; (n * n).div_ceil(64)], backing, memoize: true, raw: 0, distinct: 0, started: Clock::now() }
    }

    pub fn for_graph(g: &Graph) -> Result<Self> {
        Ok(Self::new(crate::graph::all_pairs_distances(g)?))
    }

    /// Charges every non-trivial call as a distinct query. Answers are unchanged.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self
    }

    pub fn stats(&self) -> QueryStats {
        QueryStats { raw: self.raw, distinct: self.distinct, wall_ms: self.started.elapsed_ms() }
    }

    /// Whether the unordered pair has been asked before.
    pub fn was_queried(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = normalize(u, v);
        let bit = a * self.backing.n() + b;
        self.seen[bit / 64] & (1 << (bit % 64)) != 0
    }
}

impl DistanceOracle for CountingOracle {
    fn vertex_count(&self) -> usize {
        self.backing.n()
    }

    fn query(&mut self, u: Vertex, v: Vertex) -> Result<u32> {
        let n = self.backing.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        self.raw += 1;
        if u != v {
            let (a, b) = normalize(u, v);
            let bit = a * n + b;
            let word = &mut self.seen[bit / 64];
            let mask = 1u64 << (bit % 64);
            if !self.memoize || *word & mask == 0 {
                self.distinct += 1;
            }
            *word |= mask;
        }
        Ok(self.backing.get(u, v))
    }
}
