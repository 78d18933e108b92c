//! Subgraph containment: a specialized clique-path searcher, clique search,
//! and a generic embedding oracle.

mod clique;
mod clique_path;
mod generic;
pub(crate) mod twins;
mod witness;

pub(crate) use clique::clique_in;
pub use clique::find_clique;
pub use clique_path::{contains_clique_path, contains_clique_path_with, longest_clique_path, longest_clique_path_with};
pub use generic::{generic_contains, generic_contains_pattern, generic_contains_with};
pub use witness::Witness;

use crate::error::Result;
use crate::graph::Graph;
use crate::pattern::PatternSpec;

/// Limits for a single containment search. Unlimited by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Abort with [`crate::Error::BudgetExhausted`] after this many search nodes.
    pub node_budget: Option<u64>,
}

/// Finds a copy of `pattern` in `g` using the fastest exact route.
pub fn contains(g: &Graph, pattern: &PatternSpec, opts: &SearchOptions) -> Result<Option<Witness>> {
    match pattern {
        PatternSpec::CliquePath { k, r } => contains_clique_path_with(g, *k, *r, opts),
        PatternSpec::Clique { r } => Ok(find_clique(g, *r, &g.vertices(), &Default::default())),
        PatternSpec::Friendship { .. } | PatternSpec::Explicit(_) => generic_contains_pattern(g, pattern, opts),
    }
}
