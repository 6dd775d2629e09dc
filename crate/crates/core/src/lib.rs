//! Reconstructing hidden graphs from a distance oracle.
//!
//! Algorithms only see a [`DistanceOracle`]; the [`CountingOracle`] wraps a
//! known graph and counts how many distinct pairs were asked about.

pub mod approx;
pub mod bench;
pub mod bounded;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod outerplanar;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, EdgeSet, Graph, Vertex};
pub use oracle::{CountingOracle, DistanceOracle, QueryStats};
