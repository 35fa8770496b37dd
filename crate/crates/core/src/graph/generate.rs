//! Seeded synthetic graph generators, desk-scale stand-ins for web-style
//! graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Zipf};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::scalar::Float;

/// Uniform random digraph: each node draws `Binomial(n, d/n)` out-neighbors
/// uniformly without replacement. Deterministic for a fixed seed.
pub fn generate_uniform_random<F: Float>(
    n: usize,
    d: f64,
    seed: u64,
) -> Result<DirectedGraph<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(0.0..=n as f64).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "average degree d={d} must be in [0, n={n}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let binomial = Binomial::new(n as u64, d / n as f64)
        .map_err(|e| Error::InvalidParameter(format!("bad degree distribution: {e}")))?;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity((n as f64 * d) as usize + n);
    for u in 0..n {
        let k = binomial.sample(&mut rng) as usize;
        for v in rand::seq::index::sample(&mut rng, n, k) {
            edges.push((u, v));
        }
    }
    DirectedGraph::from_unweighted(&edges, Some(n))
}

/// Digraph whose in-degrees follow a discrete power law with the given
/// exponent (> 1), scaled so the average degree is close to `d`; edge
/// sources are chosen uniformly at random. Deterministic for a fixed seed.
pub fn generate_power_law_in_degree<F: Float>(
    n: usize,
    d: f64,
    exponent: f64,
    seed: u64,
) -> Result<DirectedGraph<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if exponent <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent {exponent} must be > 1"
        )));
    }
    if d < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "average degree d={d} must be >= 0"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zipf = Zipf::new(n as f64, exponent)
        .map_err(|e| Error::InvalidParameter(format!("bad power-law distribution: {e}")))?;
    // Raw draws have a distribution-determined mean; scale them so the mean
    // in-degree lands on d. Scaling preserves the tail exponent.
    let raw: Vec<f64> = (0..n).map(|_| zipf.sample(&mut rng)).collect();
    let raw_sum: f64 = raw.iter().sum();
    let scale = if raw_sum > 0.0 {
        d * n as f64 / raw_sum
    } else {
        0.0
    };
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity((n as f64 * d) as usize + n);
    for (v, z) in raw.iter().enumerate() {
        let in_degree = (z * scale).round() as usize;
        for _ in 0..in_degree {
            let u = rng.random_range(0..n);
            edges.push((u, v));
        }
    }
    DirectedGraph::from_unweighted(&edges, Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_zero_degree_gets_sink_edge() {
        let g: DirectedGraph<f64> = generate_uniform_random(1, 0.0, 7).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
        assert_eq!(g.out_edges(0), &[(g.sink(), 1.0)]);

        let g: DirectedGraph<f64> = generate_power_law_in_degree(1, 0.0, 2.5, 3).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
        assert_eq!(g.out_edges(0), &[(g.sink(), 1.0)]);
    }

    #[test]
    fn uniform_edge_count_concentrates() {
        // m ~ sum of Binomial(n, d/n): mean n*d, sd sqrt(n*d*(1 - d/n)).
        let (n, d) = (1000usize, 20.0);
        let g: DirectedGraph<f64> = generate_uniform_random(n, d, 1).unwrap();
        let mean = n as f64 * d;
        let sd = (mean * (1.0 - d / n as f64)).sqrt();
        let dev = (g.m() as f64 - mean).abs();
        assert!(dev <= 3.0 * sd, "m={} deviates {:.1} sd", g.m(), dev / sd);
    }

    fn edge_multiset(g: &DirectedGraph<f64>) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..g.n() {
            for &(v, _) in g.out_edges(u) {
                edges.push((u, v));
            }
        }
        edges.sort_unstable();
        edges
    }

    #[test]
    fn generators_are_deterministic_per_seed() {
        let a: DirectedGraph<f64> = generate_uniform_random(200, 5.0, 42).unwrap();
        let b: DirectedGraph<f64> = generate_uniform_random(200, 5.0, 42).unwrap();
        assert_eq!(edge_multiset(&a), edge_multiset(&b));
        let c: DirectedGraph<f64> = generate_uniform_random(200, 5.0, 43).unwrap();
        assert_ne!(edge_multiset(&a), edge_multiset(&c));

        let a: DirectedGraph<f64> = generate_power_law_in_degree(300, 6.0, 2.2, 9).unwrap();
        let b: DirectedGraph<f64> = generate_power_law_in_degree(300, 6.0, 2.2, 9).unwrap();
        assert_eq!(edge_multiset(&a), edge_multiset(&b));
    }

    #[test]
    fn uniform_rejects_oversized_degree() {
        assert!(generate_uniform_random::<f64>(10, 11.0, 0).is_err());
        assert!(generate_uniform_random::<f64>(0, 0.0, 0).is_err());
    }

    #[test]
    fn power_law_rejects_bad_exponent() {
        assert!(generate_power_law_in_degree::<f64>(10, 2.0, 1.0, 0).is_err());
        assert!(generate_power_law_in_degree::<f64>(10, 2.0, 0.5, 0).is_err());
    }

    /// Tail-exponent estimate from the empirical in-degree CCDF: slope of
    /// log CCDF against log degree is -(exponent - 1). Points backed by
    /// fewer than 20 samples are dropped as noise.
    fn ccdf_tail_exponent(degrees: &[usize], n: usize) -> f64 {
        let mut sorted: Vec<usize> = degrees.iter().copied().filter(|&k| k > 0).collect();
        sorted.sort_unstable();
        let total = sorted.len();
        let mut points: Vec<(f64, f64)> = Vec::new();
        let mut i = 0;
        while i < total {
            let k = sorted[i];
            let at_least_k = total - i;
            if at_least_k >= 20.max(n / 500) {
                points.push(((k as f64).ln(), (at_least_k as f64 / total as f64).ln()));
            }
            while i < total && sorted[i] == k {
                i += 1;
            }
        }
        assert!(points.len() >= 5, "too few CCDF points: {}", points.len());
        let count = points.len() as f64;
        let mean_x: f64 = points.iter().map(|p| p.0).sum::<f64>() / count;
        let mean_y: f64 = points.iter().map(|p| p.1).sum::<f64>() / count;
        let cov: f64 = points
            .iter()
            .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
            .sum();
        let var: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
        let slope = cov / var;
        1.0 - slope
    }

    #[test]
    fn power_law_tail_exponent_matches_request() {
        let requested = 2.5;
        let n = 10_000;
        let g: DirectedGraph<f64> = generate_power_law_in_degree(n, 8.0, requested, 11).unwrap();
        let degrees: Vec<usize> = (0..n).map(|u| g.in_degree(u)).collect();
        let fitted = ccdf_tail_exponent(&degrees, n);
        assert!(
            (fitted - requested).abs() <= 0.3,
            "fitted exponent {fitted:.3} vs requested {requested}"
        );
    }
}
