//! Exact computation of the maximum average degree (mad) of a simple
//! undirected graph, and vertex decompositions that lower it.
//!
//! The toolkit is built around a three-layer flow network whose maximum
//! flow decides `2c >= mad(G)` for any nonnegative rational `c`. On top of
//! that decision procedure it provides:
//!
//! * [`mad::mad_exact`] — the exact value of mad(G) as a fraction, with a
//!   densest-subgraph witness extracted from a minimum cut,
//! * [`orientation`] — a flow-induced orientation of the edges that is made
//!   acyclic by cycle cancellation,
//! * [`decompose`] — peeling the acyclic orientation into a set `S` such
//!   that `G[S]` is `(k-1)`-degenerate and `mad(G - S) <= mad(G) - k`,
//! * [`oracle`] — brute-force ground truth for small graphs and an
//!   exhaustive search for bipartitions bounding mad on both sides.
//!
//! All arithmetic on densities is exact rational arithmetic; no floating
//! point is used anywhere in a decision path.

pub mod decompose;
pub mod flow;
pub mod graph;
pub mod mad;
pub mod oracle;
pub mod orientation;
pub mod rational;

pub use decompose::{
    decompose_by_k, forest_removal, independent_set_removal, solve, verify_decomposition,
    verify_vertex_set, Decomposition, VerificationReport,
};
pub use flow::{Flow, FlowNetwork};
pub use graph::{Graph, VertexSet};
pub use mad::{densest_subgraph, mad_decision, mad_exact, MadResult};
pub use oracle::{
    brute_force_mad, conjecture_search, degenerate_split_bound, ConjectureOutcome, SplitBound,
};
pub use orientation::{build_orientation, cancel_cycles, saturating_flow, EdgeState, Orientation};
pub use rational::{snap_to_bounded_denominator, MadValue, Rational};

use thiserror::Error;

/// Errors surfaced by the library. Contract violations indicate a bug in
/// the caller or in the library itself (they are the "should never happen"
/// traps required by the algorithm's correctness proofs).
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("operation requires a graph with at least one edge")]
    EdgelessGraph,
    #[error("size guard violated: {0}")]
    SizeGuard(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
