//! Personalized PageRank to a single target node.
//!
//! Given a directed graph and a target node `v`, this crate approximates the
//! personalized PageRank `pi(u, v)` from every source `u` by propagating
//! score updates backward along edges, largest unpropagated change first,
//! until every pending change drops below `alpha * epsilon`. The result is an
//! additive `epsilon`-approximation that only touches a neighborhood of the
//! target instead of the whole graph.
//!
//! The crate is organized around that algorithm:
//!
//! - [`graph`]: immutable dual-adjacency graph storage, edge-list ingestion,
//!   and seeded synthetic generators,
//! - [`push`]: the reverse-push algorithm itself, in a priority-queue and a
//!   queue-free work-set variant, with step/pop instrumentation,
//! - [`oracle`]: independent reference computations (power iteration, a dense
//!   solver for small graphs, Monte Carlo walks, global PageRank),
//! - [`analysis`]: error metrics, the difficulty parameter `D_v`, runtime
//!   bound evaluators, and target sampling,
//! - [`benchmark`]: a harness that runs push against the oracles over a
//!   parameter grid and emits a structured text report.
//!
//! All numeric kernels are generic over the scalar type through
//! [`scalar::Float`]; the aliases below fix `f64`, which is what the CLI and
//! the shipped tolerances use.

pub mod analysis;
pub mod benchmark;
pub mod error;
pub mod graph;
mod heap;
pub mod oracle;
pub mod push;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{DirectedGraph, NodeId};
pub use push::{ppr_to_target, PushStats, PushState, ScoreVector, Variant};
pub use scalar::Float;

/// Directed graph with `f64` edge weights.
pub type Graph = DirectedGraph<f64>;
/// Directed graph with `f32` edge weights.
pub type Graph32 = DirectedGraph<f32>;
/// Sparse reverse-push result over `f64`.
pub type Scores = ScoreVector<f64>;
/// Dense oracle result over `f64`.
pub type DenseScores = oracle::DenseScoreVector<f64>;
