//! Independent reference computations used to validate reverse push.
//!
//! Three routes to the same quantity: simultaneous fixed-point iteration of
//! the score recurrence (power iteration), a dense brute-force solve for
//! small graphs, and seeded Monte Carlo walks. Global PageRank (uniform
//! teleport over real nodes) supports adversarial target sampling.

use std::collections::HashMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::scalar::Float;

/// Node cap for the dense all-pairs solver.
pub const DENSE_NODE_CAP: usize = 500;

/// Default Chernoff-bound constant for [`walk_count_for`].
pub const DEFAULT_CHERNOFF_C: f64 = 3.0;

/// Dense score vector over all nodes, sink included at index `n`.
///
/// `target` is `None` for global PageRank, which has no target node.
#[derive(Debug, Clone)]
pub struct DenseScoreVector<F> {
    target: Option<NodeId>,
    alpha: F,
    accuracy: F,
    values: Vec<F>,
}

impl<F: Float> DenseScoreVector<F> {
    pub fn target(&self) -> Option<NodeId> {
        self.target
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    /// The accuracy parameter the producing oracle ran with.
    pub fn accuracy(&self) -> F {
        self.accuracy
    }

    /// Number of real nodes.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, u: NodeId) -> F {
        self.values[u]
    }

    /// All values including the sink entry at the end.
    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Values of the real nodes only.
    pub fn real_values(&self) -> &[F] {
        &self.values[..self.values.len() - 1]
    }

    /// Writes the TSV interchange form: `#` header, then `node<TAB>score`
    /// lines (real nodes with positive score, sorted by score descending,
    /// ties by node ascending).
    pub fn write_tsv<W: Write>(&self, oracle: &str, out: &mut W) -> std::io::Result<()> {
        match self.target {
            Some(t) => writeln!(
                out,
                "# oracle={oracle} target={t} alpha={} epsilon={}",
                self.alpha, self.accuracy
            )?,
            None => writeln!(
                out,
                "# oracle={oracle} alpha={} epsilon={}",
                self.alpha, self.accuracy
            )?,
        }
        let mut entries: Vec<(NodeId, F)> = self
            .real_values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > F::zero())
            .map(|(u, &v)| (u, v))
            .collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .expect("scores are finite")
                .then(a.0.cmp(&b.0))
        });
        for (node, score) in entries {
            writeln!(out, "{node}\t{score}")?;
        }
        Ok(())
    }
}

fn check_unit_interval<F: Float>(value: F, name: &str) -> Result<()> {
    if value > F::zero() && value < F::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {value} must lie in the open interval (0, 1)"
        )))
    }
}

/// One simultaneous application of the score recurrence toward `target`:
/// `out[u] = alpha * [u = target] + (1 - alpha) / wdeg(u) * sum weight * x[w]`.
fn sweep_to_target<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    x: &[F],
    out: &mut [F],
) {
    let damp = F::one() - alpha;
    for u in 0..graph.node_count_with_sink() {
        let mut acc = F::zero();
        for &(w, weight) in graph.out_edges(u) {
            acc += weight * x[w];
        }
        let mut value = damp * acc / graph.weighted_out_degree(u);
        if u == target {
            value += alpha;
        }
        out[u] = value;
    }
}

/// Iterations of the contraction needed to start from zero and land within
/// `epsilon` of the fixed point.
pub fn iterations_for_accuracy<F: Float>(alpha: F, epsilon: F) -> usize {
    let ratio = epsilon.as_f64().ln() / (1.0 - alpha.as_f64()).ln();
    ratio.ceil().max(1.0) as usize
}

/// Simultaneous fixed-point iteration toward `target`, from the zero
/// vector, for exactly [`iterations_for_accuracy`] sweeps. The contraction
/// ratio `1 - alpha` guarantees additive error below `epsilon` everywhere.
pub fn power_iteration_to_target<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    epsilon: F,
) -> Result<DenseScoreVector<F>> {
    check_unit_interval(alpha, "alpha")?;
    check_unit_interval(epsilon, "epsilon")?;
    if !graph.is_real_node(target) {
        return Err(Error::TargetOutOfRange {
            target,
            n: graph.n(),
        });
    }
    let rows = graph.node_count_with_sink();
    let mut x = vec![F::zero(); rows];
    let mut next = vec![F::zero(); rows];
    for _ in 0..iterations_for_accuracy(alpha, epsilon) {
        sweep_to_target(graph, target, alpha, &x, &mut next);
        std::mem::swap(&mut x, &mut next);
    }
    Ok(DenseScoreVector {
        target: Some(target),
        alpha,
        accuracy: epsilon,
        values: x,
    })
}

/// Dense matrix of `pi(u, v)` for all pairs, rows indexed by source and
/// columns by target, sink row and column included.
#[derive(Debug, Clone)]
pub struct DenseMatrix<F> {
    n: usize,
    accuracy: F,
    alpha: F,
    values: Vec<F>,
}

impl<F: Float> DenseMatrix<F> {
    /// Number of real nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn get(&self, source: NodeId, target: NodeId) -> F {
        self.values[source * (self.n + 1) + target]
    }

    /// Row of the matrix: `pi(source, v)` for every `v`, sink last.
    pub fn row(&self, source: NodeId) -> &[F] {
        &self.values[source * (self.n + 1)..(source + 1) * (self.n + 1)]
    }

    /// Column of the matrix as a dense score vector for target `v`.
    pub fn column(&self, target: NodeId) -> DenseScoreVector<F> {
        let values = (0..=self.n).map(|u| self.get(u, target)).collect();
        DenseScoreVector {
            target: Some(target),
            alpha: self.alpha,
            accuracy: self.accuracy,
            values,
        }
    }
}

/// Brute-force oracle: solves the score recurrence for every target column
/// by iterating each to machine-precision convergence. Only for graphs with
/// at most [`DENSE_NODE_CAP`] nodes.
pub fn dense_solve_all_pairs<F: Float>(graph: &DirectedGraph<F>, alpha: F) -> Result<DenseMatrix<F>> {
    dense_solve_all_pairs_with_cap(graph, alpha, DENSE_NODE_CAP)
}

pub fn dense_solve_all_pairs_with_cap<F: Float>(
    graph: &DirectedGraph<F>,
    alpha: F,
    cap: usize,
) -> Result<DenseMatrix<F>> {
    check_unit_interval(alpha, "alpha")?;
    if graph.n() > cap {
        return Err(Error::GraphTooLarge { n: graph.n(), cap });
    }
    // stop one decade below the 1e-12 residual contract: per-entry error is
    // about tol * (1 - alpha) / alpha, and row sums add it across up to 501
    // entries, which must still land within 1e-9. Widened for scalars too
    // coarse to reach it.
    let tol = F::cast(1e-13).max(F::epsilon() * F::cast(4.0));
    let rows = graph.node_count_with_sink();
    let max_sweeps = {
        let needed = tol.as_f64().ln() / (1.0 - alpha.as_f64()).ln();
        needed.ceil() as usize + 16
    };
    let mut values = vec![F::zero(); rows * rows];
    let mut x = vec![F::zero(); rows];
    let mut next = vec![F::zero(); rows];
    for target in 0..rows {
        x.fill(F::zero());
        for _ in 0..max_sweeps {
            sweep_to_target(graph, target, alpha, &x, &mut next);
            let change = x
                .iter()
                .zip(next.iter())
                .map(|(&a, &b)| (a - b).abs())
                .fold(F::zero(), F::max);
            std::mem::swap(&mut x, &mut next);
            if change < tol {
                break;
            }
        }
        for u in 0..rows {
            values[u * rows + target] = x[u];
        }
    }
    Ok(DenseMatrix {
        n: graph.n(),
        accuracy: tol,
        alpha,
        values,
    })
}

/// Seconds for one full power-iteration sweep over the graph, measured
/// after an untimed warm-up sweep. Multiplied by
/// [`iterations_for_accuracy`], this prices a full power-iteration run the
/// way the push algorithm is benchmarked against it.
pub fn time_power_sweep<F: Float>(graph: &DirectedGraph<F>, alpha: F) -> Result<f64> {
    check_unit_interval(alpha, "alpha")?;
    if graph.n() == 0 {
        return Err(Error::InvalidParameter("graph has no real nodes".into()));
    }
    let rows = graph.node_count_with_sink();
    let mut x = vec![F::one() / F::cast(rows as f64); rows];
    let mut next = vec![F::zero(); rows];
    sweep_to_target(graph, 0, alpha, &x, &mut next);
    std::mem::swap(&mut x, &mut next);
    let start = std::time::Instant::now();
    sweep_to_target(graph, 0, alpha, &x, &mut next);
    Ok(start.elapsed().as_secs_f64())
}

/// Parameters for the Monte Carlo estimator.
#[derive(Debug, Clone, Copy)]
pub struct WalkConfig {
    pub num_walks: u64,
    pub seed: u64,
    /// Safety cap on transitions per walk; `None` derives `ceil(50 / alpha)`,
    /// making truncation about as likely as `exp(-50)`.
    pub max_steps_per_walk: Option<u64>,
}

impl WalkConfig {
    pub fn new(num_walks: u64, seed: u64) -> Self {
        WalkConfig {
            num_walks,
            seed,
            max_steps_per_walk: None,
        }
    }
}

/// Monte Carlo estimate of `pi(source, v)` for all `v`.
///
/// Tracks per-node visit second moments so each entry carries a standard
/// error estimate.
#[derive(Debug, Clone)]
pub struct WalkEstimate<F> {
    source: NodeId,
    alpha: F,
    num_walks: u64,
    truncated_walks: u64,
    /// node -> (total visits, sum of squared per-walk visits)
    visits: HashMap<NodeId, (u64, u64)>,
}

impl<F: Float> WalkEstimate<F> {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn num_walks(&self) -> u64 {
        self.num_walks
    }

    /// Walks that hit the per-walk transition cap before halting.
    pub fn truncated_walks(&self) -> u64 {
        self.truncated_walks
    }

    /// Estimated `pi(source, v)`: `alpha * visits(v) / num_walks`.
    pub fn estimate(&self, v: NodeId) -> F {
        let total = self.visits.get(&v).map(|&(t, _)| t).unwrap_or(0);
        self.alpha * F::cast(total as f64 / self.num_walks as f64)
    }

    /// Standard error of [`Self::estimate`], from the sample variance of
    /// per-walk visit counts.
    pub fn std_error(&self, v: NodeId) -> F {
        let (total, sumsq) = self.visits.get(&v).copied().unwrap_or((0, 0));
        if self.num_walks < 2 {
            return F::zero();
        }
        let n = self.num_walks as f64;
        let mean = total as f64 / n;
        let var = (sumsq as f64 - n * mean * mean) / (n - 1.0);
        self.alpha * F::cast((var.max(0.0) / n).sqrt())
    }

    /// Visited nodes in unspecified order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.visits.keys().copied()
    }

    /// `(node, estimate)` sorted by estimate descending, ties by node id.
    pub fn sorted_entries(&self) -> Vec<(NodeId, F)> {
        let mut entries: Vec<(NodeId, F)> =
            self.nodes().map(|v| (v, self.estimate(v))).collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .expect("estimates are finite")
                .then(a.0.cmp(&b.0))
        });
        entries
    }

    pub fn write_tsv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "# oracle=monte-carlo source={} alpha={} walks={} truncated={}",
            self.source, self.alpha, self.num_walks, self.truncated_walks
        )?;
        for (node, score) in self.sorted_entries() {
            writeln!(out, "{node}\t{score}")?;
        }
        Ok(())
    }
}

/// Simulates `config.num_walks` independent walks from `source` (halt with
/// probability `alpha` each step, else move to a weight-proportional random
/// out-neighbor) and counts visits. Deterministic per seed.
pub fn monte_carlo_from_source<F: Float>(
    graph: &DirectedGraph<F>,
    source: NodeId,
    alpha: F,
    config: WalkConfig,
) -> Result<WalkEstimate<F>> {
    check_unit_interval(alpha, "alpha")?;
    if !graph.is_real_node(source) {
        return Err(Error::TargetOutOfRange {
            target: source,
            n: graph.n(),
        });
    }
    if config.num_walks == 0 {
        return Err(Error::InvalidParameter("num_walks must be >= 1".into()));
    }
    let cap = config
        .max_steps_per_walk
        .unwrap_or_else(|| (50.0 / alpha.as_f64()).ceil() as u64);
    if cap == 0 {
        return Err(Error::InvalidParameter(
            "max_steps_per_walk must be >= 1".into(),
        ));
    }

    let alpha_f64 = alpha.as_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut visits: HashMap<NodeId, (u64, u64)> = HashMap::new();
    let mut truncated = 0u64;
    let mut walk_counts: HashMap<NodeId, u64> = HashMap::new();
    for _ in 0..config.num_walks {
        walk_counts.clear();
        let mut current = source;
        *walk_counts.entry(current).or_insert(0) += 1;
        let mut transitions = 0u64;
        loop {
            if rng.random::<f64>() < alpha_f64 {
                break;
            }
            if transitions == cap {
                truncated += 1;
                break;
            }
            current = weighted_step(graph, current, rng.random::<f64>());
            *walk_counts.entry(current).or_insert(0) += 1;
            transitions += 1;
        }
        for (&node, &count) in walk_counts.iter() {
            let entry = visits.entry(node).or_insert((0, 0));
            entry.0 += count;
            entry.1 += count * count;
        }
    }
    Ok(WalkEstimate {
        source,
        alpha,
        num_walks: config.num_walks,
        truncated_walks: truncated,
        visits,
    })
}

/// Weight-proportional out-neighbor pick given a uniform draw in [0, 1).
fn weighted_step<F: Float>(graph: &DirectedGraph<F>, u: NodeId, r: f64) -> NodeId {
    let row = graph.out_edges(u);
    let mut remaining = r * graph.weighted_out_degree(u).as_f64();
    for &(v, w) in row {
        remaining -= w.as_f64();
        if remaining < 0.0 {
            return v;
        }
    }
    // rounding pushed the draw past the last bucket
    row.last().expect("every node has an out-edge").0
}

/// Walks needed for an additive `epsilon` approximation with failure
/// probability `delta`: `ceil(c / epsilon^2 * ln(2 / delta))` with the
/// default constant [`DEFAULT_CHERNOFF_C`].
pub fn walk_count_for(epsilon: f64, delta: f64) -> Result<u64> {
    walk_count_for_with_constant(DEFAULT_CHERNOFF_C, epsilon, delta)
}

pub fn walk_count_for_with_constant(c: f64, epsilon: f64, delta: f64) -> Result<u64> {
    check_unit_interval(epsilon, "epsilon")?;
    check_unit_interval(delta, "delta")?;
    if c <= 0.0 {
        return Err(Error::InvalidParameter("constant c must be positive".into()));
    }
    Ok((c / (epsilon * epsilon) * (2.0 / delta).ln()).ceil() as u64)
}

/// Global PageRank: power iteration with uniform teleport over the `n` real
/// nodes, run until the successive-iterate max difference drops below
/// `tolerance`. The result sums to 1 over real nodes plus sink.
pub fn global_pagerank<F: Float>(
    graph: &DirectedGraph<F>,
    alpha: F,
    tolerance: F,
) -> Result<DenseScoreVector<F>> {
    check_unit_interval(alpha, "alpha")?;
    check_unit_interval(tolerance, "tolerance")?;
    if graph.n() == 0 {
        return Err(Error::InvalidParameter(
            "global PageRank needs at least one real node".into(),
        ));
    }
    let rows = graph.node_count_with_sink();
    let teleport = F::one() / F::cast(graph.n() as f64);
    let damp = F::one() - alpha;
    let mut x = vec![teleport; rows];
    x[graph.sink()] = F::zero();
    let mut next = vec![F::zero(); rows];
    let max_sweeps = {
        let needed = tolerance.as_f64().ln() / (1.0 - alpha.as_f64()).ln();
        needed.ceil().max(1.0) as usize + 16
    };
    for _ in 0..max_sweeps {
        for v in 0..rows {
            let mut acc = F::zero();
            for &(w, weight) in graph.in_edges(v) {
                acc += x[w] * weight / graph.weighted_out_degree(w);
            }
            let tp = if graph.is_real_node(v) {
                teleport
            } else {
                F::zero()
            };
            next[v] = alpha * tp + damp * acc;
        }
        let change = x
            .iter()
            .zip(next.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(F::zero(), F::max);
        std::mem::swap(&mut x, &mut next);
        if change < tolerance {
            break;
        }
    }
    Ok(DenseScoreVector {
        target: None,
        alpha,
        accuracy: tolerance,
        values: x,
    })
}
