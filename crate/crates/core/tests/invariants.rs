//! Cross-module integration checks: oracle routes agree, reverse-push
//! estimates stay below the exact scores, and the step counter means what
//! the analysis module assumes it means.

use targetrank::analysis::max_additive_error;
use targetrank::graph::{generate_power_law_in_degree, generate_uniform_random};
use targetrank::oracle::{dense_solve_all_pairs, power_iteration_to_target};
use targetrank::{ppr_to_target, Graph, PushState, Variant};

#[test]
fn power_iteration_and_dense_agree_within_two_epsilon() {
    let graphs: Vec<Graph> = vec![
        generate_uniform_random(50, 4.0, 61).unwrap(),
        generate_uniform_random(120, 6.0, 62).unwrap(),
        generate_power_law_in_degree(200, 8.0, 2.3, 63).unwrap(),
    ];
    for graph in &graphs {
        for alpha in [0.1, 0.2] {
            let dense = dense_solve_all_pairs(graph, alpha).unwrap();
            for epsilon in [1e-4, 1e-8] {
                for target in (0..graph.n()).step_by(17) {
                    let power = power_iteration_to_target(graph, target, alpha, epsilon).unwrap();
                    for u in 0..=graph.n() {
                        let gap = (power.get(u) - dense.get(u, target)).abs();
                        assert!(
                            gap <= 2.0 * epsilon,
                            "alpha {alpha} eps {epsilon} target {target} node {u}: gap {gap}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn estimates_are_lower_bounds_for_both_variants() {
    let graph = generate_uniform_random(150, 6.0, 71).unwrap();
    let alpha = 0.15;
    let dense = dense_solve_all_pairs(&graph, alpha).unwrap();
    for variant in [Variant::PriorityQueue, Variant::WorkSet] {
        for target in (0..graph.n()).step_by(13) {
            let (scores, _) = ppr_to_target(&graph, target, alpha, 1e-4, variant).unwrap();
            for (node, score) in scores.iter() {
                assert!(
                    score <= dense.get(node, target) + 1e-9,
                    "{variant} target {target} node {node}: {score} above exact"
                );
            }
            // and each variant independently meets the error bound
            let err = max_additive_error(&scores, &dense.column(target)).unwrap();
            assert!(err <= (1.0 - alpha) * 1e-4 + 1e-10);
        }
    }
}

#[test]
fn steps_counter_equals_total_in_degree_of_pops() {
    let graph = generate_uniform_random(80, 5.0, 81).unwrap();
    let alpha = 0.2;
    let threshold = alpha * 1e-4;
    let mut state = PushState::new(&graph, 9, alpha).unwrap();
    let mut expected_steps = 0u64;
    let mut pops = 0u64;
    while let Some((node, pri)) = state.peek_max() {
        if pri <= threshold {
            break;
        }
        expected_steps += graph.in_degree(node) as u64;
        pops += 1;
        state.propagate(&graph, node);
    }
    assert_eq!(state.steps(), expected_steps);
    assert_eq!(state.pops(), pops);
    assert!(state.distinct_touched() > 0);
}

#[test]
fn priority_queue_runs_are_deterministic() {
    let graph = generate_power_law_in_degree(300, 6.0, 2.4, 91).unwrap();
    for variant in [Variant::PriorityQueue, Variant::WorkSet] {
        let (a, stats_a) = ppr_to_target(&graph, 42, 0.1, 1e-5, variant).unwrap();
        let (b, stats_b) = ppr_to_target(&graph, 42, 0.1, 1e-5, variant).unwrap();
        assert_eq!(a.sorted_entries(), b.sorted_entries());
        assert_eq!(stats_a.pops, stats_b.pops);
        assert_eq!(stats_a.steps, stats_b.steps);
    }
}
