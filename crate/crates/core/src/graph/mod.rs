//! Immutable directed-graph storage with both out- and in-adjacency.
//!
//! Nodes are dense integers `0..n`. Dead-end nodes (no out-edges) are wired
//! to a synthetic sink node stored at index `n`; the sink carries a weight-1
//! self-loop so every node, sink included, has positive weighted out-degree.
//! The sink and its edges are excluded from `n`, `m`, and all reported
//! statistics.

mod generate;

pub use generate::{generate_power_law_in_degree, generate_uniform_random};

use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Float;

/// Dense node index. Real nodes are `0..n`; index `n` is the synthetic sink.
pub type NodeId = usize;

/// Compressed adjacency: `entries[offsets[u]..offsets[u + 1]]` are the
/// `(endpoint, weight)` pairs of node `u`, in input order.
#[derive(Debug, Clone)]
struct Adjacency<F> {
    offsets: Vec<usize>,
    entries: Vec<(NodeId, F)>,
}

impl<F: Float> Adjacency<F> {
    fn from_edges(node_count: usize, edges: &[(NodeId, NodeId, F)], transpose: bool) -> Self {
        let mut offsets = vec![0usize; node_count + 1];
        for &(src, dst, _) in edges {
            let key = if transpose { dst } else { src };
            offsets[key + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let mut entries = vec![(0, F::zero()); edges.len()];
        let mut cursor = offsets.clone();
        for &(src, dst, w) in edges {
            let (key, other) = if transpose { (dst, src) } else { (src, dst) };
            entries[cursor[key]] = (other, w);
            cursor[key] += 1;
        }
        Adjacency { offsets, entries }
    }

    fn row(&self, u: NodeId) -> &[(NodeId, F)] {
        &self.entries[self.offsets[u]..self.offsets[u + 1]]
    }
}

/// Immutable directed graph, optionally weighted, with a synthetic sink.
#[derive(Debug, Clone)]
pub struct DirectedGraph<F> {
    n: usize,
    m: usize,
    out: Adjacency<F>,
    incoming: Adjacency<F>,
    weighted_out_degree: Vec<F>,
}

impl<F: Float> DirectedGraph<F> {
    /// Builds a graph from `(source, target, weight)` triples.
    ///
    /// `n` is one past the largest endpoint, or `n_hint` if that is larger.
    /// Parallel edges are kept; their weights add to the transition
    /// probability. Dead ends get a weight-1 edge to the sink and the sink
    /// gets a weight-1 self-loop.
    pub fn from_edge_list(edges: &[(NodeId, NodeId, F)], n_hint: Option<usize>) -> Result<Self> {
        for &(src, dst, w) in edges {
            if !w.is_finite() || w < F::zero() {
                return Err(Error::InvalidWeight {
                    source_node: src,
                    target_node: dst,
                    weight: w.as_f64(),
                });
            }
        }
        let max_endpoint = edges
            .iter()
            .flat_map(|&(src, dst, _)| [src, dst])
            .max()
            .map(|id| id + 1)
            .unwrap_or(0);
        let n = max_endpoint.max(n_hint.unwrap_or(0));
        let sink = n;

        let mut all_edges: Vec<(NodeId, NodeId, F)> = Vec::with_capacity(edges.len() + 1);
        all_edges.extend_from_slice(edges);

        let mut weighted_out_degree = vec![F::zero(); n + 1];
        let mut out_count = vec![0usize; n + 1];
        for &(src, _, w) in edges {
            weighted_out_degree[src] += w;
            out_count[src] += 1;
        }
        for u in 0..n {
            if out_count[u] == 0 {
                all_edges.push((u, sink, F::one()));
                weighted_out_degree[u] = F::one();
            } else if weighted_out_degree[u] <= F::zero() {
                return Err(Error::InvalidParameter(format!(
                    "node {u} has out-edges but zero total weight"
                )));
            }
        }
        all_edges.push((sink, sink, F::one()));
        weighted_out_degree[sink] = F::one();

        let out = Adjacency::from_edges(n + 1, &all_edges, false);
        let incoming = Adjacency::from_edges(n + 1, &all_edges, true);
        Ok(DirectedGraph {
            n,
            m: edges.len(),
            out,
            incoming,
            weighted_out_degree,
        })
    }

    /// Builds an unweighted graph (all weights 1).
    pub fn from_unweighted(edges: &[(NodeId, NodeId)], n_hint: Option<usize>) -> Result<Self> {
        let weighted: Vec<(NodeId, NodeId, F)> = edges
            .iter()
            .map(|&(src, dst)| (src, dst, F::one()))
            .collect();
        Self::from_edge_list(&weighted, n_hint)
    }

    /// Parses a whitespace-separated edge list: one `u v` or `u v w` per
    /// line. Blank lines and lines starting with `#` are ignored.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut edges: Vec<(NodeId, NodeId, F)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let src = parse_node(fields.next(), line_no, "source")?;
            let dst = parse_node(fields.next(), line_no, "target")?;
            let weight = match fields.next() {
                Some(tok) => tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad weight {tok:?}"),
                })?,
                None => 1.0,
            };
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected 2 or 3 fields".into(),
                });
            }
            edges.push((src, dst, F::cast(weight)));
        }
        if edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        Self::from_edge_list(&edges, None)
    }

    /// Loads an edge-list file from disk.
    pub fn load_edge_list_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::load_edge_list(std::io::BufReader::new(file))
    }

    /// Number of real nodes (sink excluded).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of real edges (synthetic sink edges excluded).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Index of the synthetic sink node.
    pub fn sink(&self) -> NodeId {
        self.n
    }

    /// Number of storage rows: real nodes plus the sink.
    pub fn node_count_with_sink(&self) -> usize {
        self.n + 1
    }

    /// Outgoing `(target, weight)` pairs of `u`, synthetic edges included.
    pub fn out_edges(&self, u: NodeId) -> &[(NodeId, F)] {
        self.out.row(u)
    }

    /// Incoming `(source, weight)` pairs of `u`, synthetic edges included.
    pub fn in_edges(&self, u: NodeId) -> &[(NodeId, F)] {
        self.incoming.row(u)
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out.row(u).len()
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.incoming.row(u).len()
    }

    /// Sum of outgoing edge weights of `u`; positive for every node.
    pub fn weighted_out_degree(&self, u: NodeId) -> F {
        self.weighted_out_degree[u]
    }

    /// Average real out-degree `m / n`.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m as f64 / self.n as f64
        }
    }

    /// True if `u` is a real node (valid reverse-push target).
    pub fn is_real_node(&self, u: NodeId) -> bool {
        u < self.n
    }
}

fn parse_node(token: Option<&str>, line: usize, role: &str) -> Result<NodeId> {
    let tok = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {role} field"),
    })?;
    tok.parse::<NodeId>().map_err(|_| Error::Parse {
        line,
        message: format!("bad {role} {tok:?}"),
    })
}
