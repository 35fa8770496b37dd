//! Benchmark harness: reverse push against the oracles over a parameter
//! grid, with theorem-bound comparisons and a structured text report.
//!
//! For each `(alpha, epsilon)` setting the runner samples targets, runs
//! reverse push with instrumentation, measures the true error against a
//! power-iteration reference, evaluates the difficulty parameter and both
//! runtime allowances, and prices a power-iteration baseline as one timed
//! sweep times the iteration count. Everything except wall-time fields is
//! reproducible bit for bit from the seed.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::analysis::{
    compute_d_v, max_additive_error, sample_targets, theorem2_allowance, theorem3_allowance,
    theorem3_multiplier, SamplingMode,
};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::oracle::{iterations_for_accuracy, power_iteration_to_target, time_power_sweep};
use crate::push::{ppr_to_target, Variant};

/// Oracle accuracy per unit of `alpha * epsilon`: the reference vector is
/// two orders of magnitude sharper than the threshold it classifies.
const ORACLE_SHARPENING: f64 = 100.0;

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub alphas: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub targets_per_setting: usize,
    pub sampling: SamplingMode,
    pub variant: Variant,
    pub seed: u64,
    /// Where the graph came from, echoed into the report header.
    pub graph_descriptor: String,
    /// Worker threads for per-target runs: 1 is sequential, 0 uses the
    /// default pool size.
    pub jobs: usize,
}

impl BenchmarkConfig {
    fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.epsilons.is_empty() {
            return Err(Error::InvalidParameter(
                "benchmark needs at least one alpha and one epsilon".into(),
            ));
        }
        for &a in &self.alphas {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha = {a} must lie in the open interval (0, 1)"
                )));
            }
        }
        for &e in &self.epsilons {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "epsilon = {e} must lie in the open interval (0, 1)"
                )));
            }
        }
        if self.targets_per_setting == 0 {
            return Err(Error::InvalidParameter(
                "targets_per_setting must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Measurements for one target at one setting.
#[derive(Debug, Clone)]
pub struct TargetRecord {
    pub target: NodeId,
    pub pops: u64,
    pub steps: u64,
    /// `steps + pops * log2(n)`: inner-loop updates plus heap-pop cost.
    pub work: f64,
    pub max_error: f64,
    pub error_over_epsilon: f64,
    pub d_v: f64,
    pub steps_over_d_v: Option<f64>,
    pub thm2_allowance_pq: f64,
    pub thm2_allowance_work_set: f64,
    pub thm3_allowance: f64,
    pub wall_time: f64,
}

/// All records and aggregates for one `(alpha, epsilon)` setting.
#[derive(Debug, Clone)]
pub struct SettingReport {
    pub alpha: f64,
    pub epsilon: f64,
    /// `(2 / alpha) * log2(1 / (alpha epsilon))`, the explicit-constant
    /// per-unit-difficulty multiplier.
    pub thm3_multiplier: f64,
    /// `(1 / alpha) * log2(1 / (alpha epsilon))`, the multiplier without
    /// the stage constant, for comparison with quoted ratios.
    pub thm3_multiplier_oform: f64,
    pub baseline_iterations: usize,
    pub baseline_sweep_seconds: f64,
    pub baseline_seconds: f64,
    pub records: Vec<TargetRecord>,
    pub mean_pops: f64,
    pub mean_steps: f64,
    pub mean_work: f64,
    pub mean_error_over_epsilon: f64,
    pub max_error_over_epsilon: f64,
    pub mean_steps_over_d_v: Option<f64>,
    pub mean_wall_time: f64,
    /// 20 linear buckets of error/epsilon over [0, 1].
    pub error_histogram: [u64; 20],
    /// Bucket `i` counts runs with `floor(log2(max(steps, 1))) == i`.
    pub steps_histogram_log2: Vec<u64>,
    /// Whether some target's empirical error exceeded half of epsilon.
    pub exceeds_half_epsilon: bool,
    /// Targets whose measured error reached epsilon (should be empty).
    pub failures: Vec<NodeId>,
}

#[derive(Debug, Clone)]
pub struct BenchmarkReport {
    pub graph_descriptor: String,
    pub n: usize,
    pub m: usize,
    pub variant: Variant,
    pub sampling: SamplingMode,
    pub targets_per_setting: usize,
    pub seed: u64,
    pub settings: Vec<SettingReport>,
    pub failed: bool,
}

/// Runs the full grid. Per-target work within a setting may run on worker
/// threads per `config.jobs`; record order and every numeric field other
/// than wall times are independent of that.
pub fn run_benchmark(
    graph: &DirectedGraph<f64>,
    config: &BenchmarkConfig,
) -> Result<BenchmarkReport> {
    config.validate()?;
    if graph.n() == 0 {
        return Err(Error::InvalidParameter("graph has no real nodes".into()));
    }

    let mut settings = Vec::new();
    let mut setting_index = 0u64;
    for &alpha in &config.alphas {
        for &epsilon in &config.epsilons {
            let targets = sample_targets(
                graph,
                config.targets_per_setting,
                config.sampling,
                alpha,
                config.seed.wrapping_add(setting_index),
            )?;
            settings.push(run_setting(graph, config, alpha, epsilon, &targets)?);
            setting_index += 1;
        }
    }

    let failed = settings.iter().any(|s| !s.failures.is_empty());
    Ok(BenchmarkReport {
        graph_descriptor: config.graph_descriptor.clone(),
        n: graph.n(),
        m: graph.m(),
        variant: config.variant,
        sampling: config.sampling,
        targets_per_setting: config.targets_per_setting,
        seed: config.seed,
        settings,
        failed,
    })
}

fn run_setting(
    graph: &DirectedGraph<f64>,
    config: &BenchmarkConfig,
    alpha: f64,
    epsilon: f64,
    targets: &[NodeId],
) -> Result<SettingReport> {
    let run_one = |&target: &NodeId| -> Result<TargetRecord> {
        measure_target(graph, target, alpha, epsilon, config.variant)
    };
    let records: Vec<TargetRecord> = if config.jobs == 1 {
        targets.iter().map(run_one).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
        pool.install(|| targets.par_iter().map(run_one).collect::<Result<_>>())?
    };

    let baseline_sweep_seconds = time_power_sweep(graph, alpha)?;
    let baseline_iterations = iterations_for_accuracy(alpha, epsilon);
    let count = records.len() as f64;
    let mean = |f: fn(&TargetRecord) -> f64| records.iter().map(f).sum::<f64>() / count;

    let mut error_histogram = [0u64; 20];
    let mut steps_histogram_log2: Vec<u64> = Vec::new();
    for r in &records {
        let bucket = ((r.error_over_epsilon * 20.0) as usize).min(19);
        error_histogram[bucket] += 1;
        let log_bucket = (63 - r.steps.max(1).leading_zeros() as u64) as usize;
        if steps_histogram_log2.len() <= log_bucket {
            steps_histogram_log2.resize(log_bucket + 1, 0);
        }
        steps_histogram_log2[log_bucket] += 1;
    }

    let ratios: Vec<f64> = records.iter().filter_map(|r| r.steps_over_d_v).collect();
    let mean_steps_over_d_v = if ratios.is_empty() {
        None
    } else {
        Some(ratios.iter().sum::<f64>() / ratios.len() as f64)
    };

    Ok(SettingReport {
        alpha,
        epsilon,
        thm3_multiplier: theorem3_multiplier(alpha, epsilon),
        thm3_multiplier_oform: theorem3_multiplier(alpha, epsilon) / 2.0,
        baseline_iterations,
        baseline_sweep_seconds,
        baseline_seconds: baseline_sweep_seconds * baseline_iterations as f64,
        mean_pops: mean(|r| r.pops as f64),
        mean_steps: mean(|r| r.steps as f64),
        mean_work: mean(|r| r.work),
        mean_error_over_epsilon: mean(|r| r.error_over_epsilon),
        max_error_over_epsilon: records
            .iter()
            .map(|r| r.error_over_epsilon)
            .fold(0.0, f64::max),
        mean_steps_over_d_v,
        mean_wall_time: mean(|r| r.wall_time),
        exceeds_half_epsilon: records.iter().any(|r| r.max_error > 0.5 * epsilon),
        failures: records
            .iter()
            .filter(|r| r.max_error >= epsilon)
            .map(|r| r.target)
            .collect(),
        error_histogram,
        steps_histogram_log2,
        records,
    })
}

fn measure_target(
    graph: &DirectedGraph<f64>,
    target: NodeId,
    alpha: f64,
    epsilon: f64,
    variant: Variant,
) -> Result<TargetRecord> {
    let start = Instant::now();
    let (scores, stats) = ppr_to_target(graph, target, alpha, epsilon, variant)?;
    let wall_time = start.elapsed().as_secs_f64();

    let threshold = alpha * epsilon;
    let exact = power_iteration_to_target(graph, target, alpha, threshold / ORACLE_SHARPENING)?;
    let max_error = max_additive_error(&scores, &exact)?;
    let d_v = compute_d_v(graph, &exact, threshold)?.d_v;
    let thm2 = theorem2_allowance(graph, alpha, epsilon)?;
    let log2_n = (graph.n() as f64).log2();
    Ok(TargetRecord {
        target,
        pops: stats.pops,
        steps: stats.steps,
        work: stats.steps as f64 + stats.pops as f64 * log2_n,
        max_error,
        error_over_epsilon: max_error / epsilon,
        d_v,
        steps_over_d_v: (d_v > 0.0).then(|| stats.steps as f64 / d_v),
        thm2_allowance_pq: thm2.priority_queue,
        thm2_allowance_work_set: thm2.work_set,
        thm3_allowance: theorem3_allowance(d_v, alpha, epsilon)?,
        wall_time,
    })
}

impl BenchmarkReport {
    /// Writes the versioned text form. All wall-clock measurements live in
    /// fields whose key ends in `seconds` or, for per-target records, in
    /// the final `seconds` column; everything else is reproducible from the
    /// seed.
    pub fn write_text<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "report-version: 1")?;
        writeln!(out, "graph: {}", self.graph_descriptor)?;
        writeln!(out, "nodes: {}", self.n)?;
        writeln!(out, "edges: {}", self.m)?;
        writeln!(out, "variant: {}", self.variant)?;
        writeln!(out, "sampling: {}", self.sampling)?;
        writeln!(out, "targets-per-setting: {}", self.targets_per_setting)?;
        writeln!(out, "seed: {}", self.seed)?;
        writeln!(out, "log-base: 2")?;
        writeln!(out, "thm2-constant: 1")?;
        writeln!(out, "thm3-stage-constant: 2")?;
        writeln!(out, "settings: {}", self.settings.len())?;
        for s in &self.settings {
            writeln!(out)?;
            writeln!(out, "[setting alpha={} epsilon={}]", s.alpha, s.epsilon)?;
            writeln!(out, "thm3-multiplier: {}", s.thm3_multiplier)?;
            writeln!(out, "thm3-multiplier-oform: {}", s.thm3_multiplier_oform)?;
            writeln!(out, "baseline-iterations: {}", s.baseline_iterations)?;
            writeln!(out, "baseline-sweep-seconds: {}", s.baseline_sweep_seconds)?;
            writeln!(out, "baseline-seconds: {}", s.baseline_seconds)?;
            writeln!(
                out,
                "columns: target pops steps work max-error error/epsilon d-v steps/d-v \
                 thm2-pq thm2-set thm3-allowance seconds"
            )?;
            for r in &s.records {
                let ratio = r
                    .steps_over_d_v
                    .map(|x| x.to_string())
                    .unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "record: {} {} {} {} {} {} {} {} {} {} {} {}",
                    r.target,
                    r.pops,
                    r.steps,
                    r.work,
                    r.max_error,
                    r.error_over_epsilon,
                    r.d_v,
                    ratio,
                    r.thm2_allowance_pq,
                    r.thm2_allowance_work_set,
                    r.thm3_allowance,
                    r.wall_time,
                )?;
            }
            writeln!(out, "targets: {}", s.records.len())?;
            writeln!(out, "mean-pops: {}", s.mean_pops)?;
            writeln!(out, "mean-steps: {}", s.mean_steps)?;
            writeln!(out, "mean-work: {}", s.mean_work)?;
            writeln!(out, "mean-error/epsilon: {}", s.mean_error_over_epsilon)?;
            writeln!(out, "max-error/epsilon: {}", s.max_error_over_epsilon)?;
            match s.mean_steps_over_d_v {
                Some(v) => writeln!(out, "mean-steps/d-v: {v}")?,
                None => writeln!(out, "mean-steps/d-v: -")?,
            }
            writeln!(out, "mean-seconds: {}", s.mean_wall_time)?;
            let histogram: Vec<String> =
                s.error_histogram.iter().map(|c| c.to_string()).collect();
            writeln!(out, "error-histogram: {}", histogram.join(","))?;
            let steps_hist: Vec<String> = s
                .steps_histogram_log2
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| format!("{i}:{c}"))
                .collect();
            writeln!(out, "steps-histogram-log2: {}", steps_hist.join(","))?;
            writeln!(out, "exceeds-half-epsilon: {}", s.exceeds_half_epsilon)?;
            if s.failures.is_empty() {
                writeln!(out, "failures: none")?;
            } else {
                let list: Vec<String> = s.failures.iter().map(|t| t.to_string()).collect();
                writeln!(out, "failures: {}", list.join(","))?;
            }
            writeln!(out, "[end setting]")?;
        }
        writeln!(out)?;
        writeln!(out, "status: {}", if self.failed { "FAILED" } else { "ok" })?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("report text is UTF-8")
    }

    /// The report with wall-clock content blanked, for byte-comparison
    /// across runs.
    pub fn reproducible_text(&self) -> String {
        strip_wall_time_fields(&self.to_text())
    }
}

/// Removes wall-clock content from a report: lines whose key ends in
/// `seconds` and the final column of `record:` lines.
pub fn strip_wall_time_fields(report: &str) -> String {
    let mut result = String::with_capacity(report.len());
    for line in report.lines() {
        if let Some((key, _)) = line.split_once(':') {
            if key.ends_with("seconds") {
                continue;
            }
        }
        if line.starts_with("record: ") {
            match line.rsplit_once(' ') {
                Some((head, _seconds)) => result.push_str(head),
                None => result.push_str(line),
            }
        } else {
            result.push_str(line);
        }
        result.push('\n');
    }
    result
}
