//! Toolkit for Turán-type extremal problems on clique-paths.
//!
//! * [`graph`] and [`graph6`]: compact immutable graphs and their interchange format.
//! * [`constructions`]: Turán graphs, clique-paths `P_{k,r}`, friendship graphs
//!   and the extremal candidates `G_{n,k,r}`.
//! * [`containment`]: exact subgraph search with witnesses.
//! * [`isomorphism`]: canonical forms and isomorph-free generation.
//! * [`extremal`]: exact `ex(n, H)` by exhaustive generation.
//! * [`pipeline`]: structural witness extraction from dense graphs.

pub mod bits;
pub mod constructions;
pub mod containment;
mod error;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod isomorphism;
pub mod pattern;
pub mod pipeline;

pub use bits::VertexSet;
pub use containment::{SearchOptions, Witness};
pub use error::{Error, Result};
pub use graph::Graph;
pub use pattern::PatternSpec;

/// Version tag written into every JSON and CSV artifact.
pub const SCHEMA_VERSION: u32 = 1;
