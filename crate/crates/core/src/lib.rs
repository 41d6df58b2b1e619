//! Graph clustering under local restrictions.
//!
//! A `(μ, p, q)`-cluster is a vertex set `C` with `μ(C) ≤ p` and at most `q`
//! edges leaving it, where `μ` is one of the measures in [`Measure`]. This
//! crate decides whether a graph can be partitioned into such clusters, using
//! important separators and satellite reductions for small `q`, color-coding
//! dynamic programs for small `p`, and exhaustive oracles for cross-checking.

pub mod cluster;
pub mod error;
pub mod families;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod io;
pub mod measure;
pub mod oracles;
pub mod satellite;
pub mod separators;
pub mod solver_p;
pub mod solver_q;
pub mod uncross;
pub mod vertex_set;

pub use cluster::{Bounds, ClusterStats, PartitionSolution};
pub use error::{Error, Result};
pub use graph::{Contraction, EdgeCut, MultiGraph};
pub use measure::Measure;
pub use vertex_set::VertexSet;
