//! Difficulty parameterization, error metrics, target sampling, and runtime
//! bound evaluators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::oracle::{global_pagerank, DenseScoreVector};
use crate::push::ScoreVector;
use crate::scalar::Float;

/// Instance difficulty at threshold `x`: the total in-degree-plus-heap cost
/// of the nodes whose exact score exceeds `x`.
#[derive(Debug, Clone, Copy)]
pub struct DifficultyParams<F> {
    /// The threshold `x` the parameter was evaluated at.
    pub threshold: F,
    /// `sum over real u with pi(u, v) > x of (in_degree(u) + log2(n))`.
    pub d_v: F,
    /// Number of contributing nodes.
    pub contributors: usize,
    /// Base of the logarithm pricing heap pops; always 2 here.
    pub log_base: u32,
}

/// Evaluates the difficulty parameter from exact scores.
///
/// `exact_scores` must come from an oracle whose own error is well below
/// `x` (a tenth or less), since membership is decided by `pi(u, v) > x`.
/// The sink never contributes.
pub fn compute_d_v<F: Float>(
    graph: &DirectedGraph<F>,
    exact_scores: &DenseScoreVector<F>,
    x: F,
) -> Result<DifficultyParams<F>> {
    if !(x > F::zero()) {
        return Err(Error::InvalidParameter(format!(
            "difficulty threshold x = {x} must be positive"
        )));
    }
    let log2_n = F::cast((graph.n() as f64).log2());
    let mut d_v = F::zero();
    let mut contributors = 0usize;
    for u in 0..graph.n() {
        if exact_scores.get(u) > x {
            d_v += F::cast(graph.in_degree(u) as f64) + log2_n;
            contributors += 1;
        }
    }
    Ok(DifficultyParams {
        threshold: x,
        d_v,
        contributors,
        log_base: 2,
    })
}

/// Largest additive error of a sparse estimate against exact scores, over
/// every real node; nodes absent from the estimate count as 0.
pub fn max_additive_error<F: Float>(
    estimate: &ScoreVector<F>,
    exact: &DenseScoreVector<F>,
) -> Result<F> {
    if exact.target() != Some(estimate.target()) {
        return Err(Error::InvalidParameter(format!(
            "target mismatch: estimate has {}, exact has {:?}",
            estimate.target(),
            exact.target()
        )));
    }
    if exact.alpha() != estimate.alpha() {
        return Err(Error::InvalidParameter(format!(
            "alpha mismatch: estimate has {}, exact has {}",
            estimate.alpha(),
            exact.alpha()
        )));
    }
    let mut worst = F::zero();
    for u in 0..exact.n() {
        worst = worst.max((estimate.get(u) - exact.get(u)).abs());
    }
    Ok(worst)
}

/// How benchmark targets are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Uniformly with replacement over real nodes.
    Uniform,
    /// With probability proportional to global PageRank.
    Pagerank,
}

impl SamplingMode {
    pub fn name(self) -> &'static str {
        match self {
            SamplingMode::Uniform => "uniform",
            SamplingMode::Pagerank => "pagerank",
        }
    }
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(SamplingMode::Uniform),
            "pagerank" => Ok(SamplingMode::Pagerank),
            other => Err(Error::InvalidParameter(format!(
                "unknown sampling mode {other:?}, expected uniform or pagerank"
            ))),
        }
    }
}

/// Draws `k` target nodes with replacement, uniformly or weighted by global
/// PageRank. Deterministic per seed.
pub fn sample_targets<F: Float>(
    graph: &DirectedGraph<F>,
    k: usize,
    mode: SamplingMode,
    alpha: F,
    seed: u64,
) -> Result<Vec<NodeId>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if graph.n() == 0 {
        return Err(Error::InvalidParameter(
            "cannot sample targets from an empty graph".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        SamplingMode::Uniform => Ok((0..k).map(|_| rng.random_range(0..graph.n())).collect()),
        SamplingMode::Pagerank => {
            let pr = global_pagerank(graph, alpha, F::cast(1e-9))?;
            // cumulative mass over real nodes only; the sink is not a target
            let mut cumulative: Vec<f64> = Vec::with_capacity(graph.n());
            let mut total = 0.0f64;
            for u in 0..graph.n() {
                total += pr.get(u).as_f64();
                cumulative.push(total);
            }
            Ok((0..k)
                .map(|_| {
                    let draw = rng.random::<f64>() * total;
                    match cumulative
                        .binary_search_by(|probe| probe.partial_cmp(&draw).expect("finite mass"))
                    {
                        Ok(i) | Err(i) => i.min(graph.n() - 1),
                    }
                })
                .collect())
        }
    }
}

/// Average-case step allowances for a uniformly random target, with
/// constants taken as 1: `(1 / (alpha * epsilon)) * (m/n + log2 n)` for the
/// priority-queue variant and `(1 / (alpha * epsilon)) * (m/n)` for the
/// queue-free work-set variant.
#[derive(Debug, Clone, Copy)]
pub struct Theorem2Allowance<F> {
    pub priority_queue: F,
    pub work_set: F,
}

pub fn theorem2_allowance<F: Float>(
    graph: &DirectedGraph<F>,
    alpha: F,
    epsilon: F,
) -> Result<Theorem2Allowance<F>> {
    check_unit_interval(alpha, "alpha")?;
    check_unit_interval(epsilon, "epsilon")?;
    if graph.n() == 0 {
        return Err(Error::InvalidParameter("graph has no real nodes".into()));
    }
    let base = F::one() / (alpha * epsilon);
    let avg_degree = F::cast(graph.average_degree());
    let log2_n = F::cast((graph.n() as f64).log2());
    Ok(Theorem2Allowance {
        priority_queue: base * (avg_degree + log2_n),
        work_set: base * avg_degree,
    })
}

/// Parameterized per-target work allowance with the proof's explicit
/// constants: `(2 / alpha) * log2(1 / (alpha * epsilon)) * d_v`.
pub fn theorem3_allowance<F: Float>(d_v: F, alpha: F, epsilon: F) -> Result<F> {
    check_unit_interval(alpha, "alpha")?;
    check_unit_interval(epsilon, "epsilon")?;
    if d_v < F::zero() {
        return Err(Error::InvalidParameter(format!(
            "d_v = {d_v} must be nonnegative"
        )));
    }
    Ok(theorem3_multiplier(alpha, epsilon) * d_v)
}

/// The per-unit-difficulty multiplier `(2 / alpha) * log2(1 / (alpha *
/// epsilon))`.
pub fn theorem3_multiplier<F: Float>(alpha: F, epsilon: F) -> F {
    let two = F::cast(2.0);
    two / alpha * F::cast(1.0 / (alpha * epsilon).as_f64()).log2()
}

/// Average-case step bound when scores follow a rank power law with
/// exponent `beta` in (0, 1):
/// `c * (m / n^(1/beta)) * (1 / (alpha * epsilon))^(1/beta)` with
/// `c = (1 - beta)^(1/beta - 1)`.
pub fn power_law_bound<F: Float>(
    n: usize,
    m: usize,
    beta: F,
    alpha: F,
    epsilon: F,
) -> Result<F> {
    if !(beta > F::zero() && beta < F::one()) {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta} must lie in the open interval (0, 1)"
        )));
    }
    check_unit_interval(alpha, "alpha")?;
    check_unit_interval(epsilon, "epsilon")?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let inv_beta = F::one() / beta;
    let c = (F::one() - beta).powf(inv_beta - F::one());
    let n_term = F::cast(n as f64).powf(inv_beta);
    let rate = (F::one() / (alpha * epsilon)).powf(inv_beta);
    Ok(c * F::cast(m as f64) / n_term * rate)
}

/// Fits the rank power-law exponent of a score vector: sorts the values
/// above 1e-12 descending and regresses log value on log rank over ranks
/// 2..k. Returns the negated slope.
pub fn fit_power_law_exponent<F: Float>(values: &[F]) -> Result<F> {
    let positive = values.iter().filter(|&&v| v > F::zero()).count();
    if positive < 10 {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs at least 10 positive values, got {positive}"
        )));
    }
    let floor = F::cast(1e-12);
    let mut sorted: Vec<F> = values.iter().copied().filter(|&v| v > floor).collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("scores are finite"));
    let k = sorted.len();
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "power-law fit needs at least 3 values above 1e-12, got {k}"
        )));
    }
    // least squares on (ln rank, ln value) for ranks 2..=k
    let count = (k - 1) as f64;
    let points = (2..=k).map(|rank| {
        (
            (rank as f64).ln(),
            sorted[rank - 1].as_f64().ln(),
        )
    });
    let (mut sum_x, mut sum_y) = (0.0f64, 0.0f64);
    for (x, y) in points.clone() {
        sum_x += x;
        sum_y += y;
    }
    let (mean_x, mean_y) = (sum_x / count, sum_y / count);
    let (mut cov, mut var) = (0.0f64, 0.0f64);
    for (x, y) in points {
        cov += (x - mean_x) * (y - mean_y);
        var += (x - mean_x) * (x - mean_x);
    }
    Ok(F::cast(-cov / var))
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
