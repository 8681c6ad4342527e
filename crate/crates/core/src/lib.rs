//! One-mode projections of bipartite graphs.
//!
//! [`graph`] holds the bipartite representation, [`projection`] computes the
//! unweighted and weighted projections by two independent routes, and
//! [`verify`] checks the structural properties those projections must have on
//! any given instance. [`generator`] draws seeded test and benchmark graphs.
//!
//! With the default `parallel` feature, projections and corpus sweeps run on
//! rayon; results are identical to the sequential path.

pub mod bench;
pub mod exec;
pub mod generator;
pub mod graph;
pub mod io;
pub mod projection;
pub mod verify;

pub use exec::Execution;
pub use generator::{generate, generate_with_pendant_pair, GenError, GenSpec, Model, PendantInstance};
pub use graph::{BiAdjacencyMatrix, BipartiteGraph, DegreeSums, DensityStats, GraphError, Part};
pub use projection::{
    project_matrix, project_matrix_weighted, project_sparse, project_weighted, strip_weights,
    Side, UnipartiteGraph, WeightedUnipartiteGraph,
};
pub use verify::{verify_all, PropertyId, Status, VerificationReport};
