//! Error type shared across the crate.

use crate::graph::NodeId;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric flag or argument fell outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An edge carried a weight that is negative or not finite.
    #[error("invalid weight {weight} on edge ({source_node}, {target_node})")]
    InvalidWeight {
        source_node: NodeId,
        target_node: NodeId,
        weight: f64,
    },

    /// An edge-list line failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Edge-list input contained no edges.
    #[error("edge list is empty")]
    EmptyEdgeList,

    /// The requested target is the synthetic sink or not a node at all.
    #[error("target {target} is out of range (graph has {n} real nodes)")]
    TargetOutOfRange { target: NodeId, n: usize },

    /// The graph exceeds the cap of an exact oracle.
    #[error("graph has {n} nodes, above the cap of {cap} for this operation")]
    GraphTooLarge { n: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
