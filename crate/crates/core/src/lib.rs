//! Intersection models for trapezoid, parallelogram and permutation graphs,
//! the vertex-splitting algorithm Split-U, and the reduction from monotone
//! NAE-3-SAT to bounded tolerance recognition, together with brute-force
//! oracles that check the equivalences on small instances.
//!
//! Every geometric coordinate is an exact rational. Vertex ids are dense
//! integers; human-readable names live in side tables.

pub mod error;
pub mod exec;
pub mod geometry;
pub mod graph;
pub mod oracles;
pub mod orientation;
pub mod reduction;
pub mod split;
pub mod structure;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{Graph, Vertex, VertexSet};
