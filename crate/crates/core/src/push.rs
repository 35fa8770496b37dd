//! Reverse push: personalized PageRank to a target node.
//!
//! Scores propagate backward from the target along in-edges. Each node `u`
//! carries a score `s(u)` (a lower bound on `pi(u, target)` that only
//! improves) and a priority `p(u)`, the part of `s(u)` that has not yet been
//! pushed to `u`'s in-neighbors. The priority-queue variant always
//! propagates the node with the largest pending change; the work-set variant
//! propagates any node whose pending change exceeds the stop threshold, in
//! FIFO order. Both run until every priority is at most `alpha * epsilon`,
//! which bounds every node's additive error by `(1 - alpha) * epsilon`.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::heap::IndexedMaxHeap;
use crate::scalar::Float;

/// Scheduling discipline for pending propagations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Indexed binary max-heap; always propagates the largest priority.
    PriorityQueue,
    /// FIFO over the set of nodes with priority above the threshold.
    WorkSet,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::PriorityQueue => "pq",
            Variant::WorkSet => "set",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pq" | "priority-queue" | "priority_queue" => Ok(Variant::PriorityQueue),
            "set" | "work-set" | "work_set" => Ok(Variant::WorkSet),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant {other:?}, expected pq or set"
            ))),
        }
    }
}

/// Instrumentation counters for one reverse-push run.
#[derive(Debug, Clone, Copy, Default)]
pub struct PushStats {
    /// Nodes taken off the queue or work set.
    pub pops: u64,
    /// Priority updates in the inner loop (one per in-neighbor per pop).
    pub steps: u64,
    /// Distinct nodes that ever received score.
    pub distinct_touched: usize,
    /// Seconds of wall time for the run.
    pub wall_time: f64,
}

/// Sparse estimate of `pi(u, target)` for all `u`; absent nodes are 0.
#[derive(Debug, Clone)]
pub struct ScoreVector<F> {
    target: NodeId,
    alpha: F,
    entries: HashMap<NodeId, F>,
}

impl<F: Float> ScoreVector<F> {
    /// All-zero estimate, e.g. as a comparison baseline.
    pub fn new_empty(target: NodeId, alpha: F) -> Self {
        ScoreVector {
            target,
            alpha,
            entries: HashMap::new(),
        }
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    /// Estimated score of `u` (0 when untouched).
    pub fn get(&self, u: NodeId) -> F {
        self.entries.get(&u).copied().unwrap_or_else(F::zero)
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, F)> + '_ {
        self.entries.iter().map(|(&u, &s)| (u, s))
    }

    /// Entries sorted by score descending, ties by node id ascending.
    pub fn sorted_entries(&self) -> Vec<(NodeId, F)> {
        let mut entries: Vec<(NodeId, F)> = self.iter().collect();
        entries.sort_by(|a, b| {
            b.1.partial_cmp(&a.1)
                .expect("scores are finite")
                .then(a.0.cmp(&b.0))
        });
        entries
    }

    /// Writes the TSV interchange form: a `#` header followed by
    /// `node<TAB>score` lines in sorted order.
    pub fn write_tsv<W: Write>(&self, epsilon: F, variant: Variant, out: &mut W) -> std::io::Result<()> {
        writeln!(
            out,
            "# target={} alpha={} epsilon={} variant={}",
            self.target, self.alpha, epsilon, variant
        )?;
        for (node, score) in self.sorted_entries() {
            writeln!(out, "{node}\t{score}")?;
        }
        Ok(())
    }

    pub fn to_tsv(&self, epsilon: F, variant: Variant) -> String {
        let mut buf = Vec::new();
        self.write_tsv(epsilon, variant, &mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("TSV output is UTF-8")
    }
}

/// Live state of a priority-queue reverse-push run.
///
/// Scores and priorities live in an arena indexed by discovery order, so
/// memory and per-operation cost scale with the explored neighborhood, not
/// with the graph.
pub struct PushState<F> {
    target: NodeId,
    alpha: F,
    slot_of: HashMap<NodeId, u32>,
    nodes: Vec<NodeId>,
    scores: Vec<F>,
    priorities: Vec<F>,
    queue: IndexedMaxHeap<F>,
    pops: u64,
    steps: u64,
}

impl<F: Float> PushState<F> {
    /// Seeds the state with `s(target) = p(target) = alpha`.
    pub fn new(graph: &DirectedGraph<F>, target: NodeId, alpha: F) -> Result<Self> {
        check_unit_interval(alpha, "alpha")?;
        if !graph.is_real_node(target) {
            return Err(Error::TargetOutOfRange {
                target,
                n: graph.n(),
            });
        }
        let mut state = PushState {
            target,
            alpha,
            slot_of: HashMap::new(),
            nodes: Vec::new(),
            scores: Vec::new(),
            priorities: Vec::new(),
            queue: IndexedMaxHeap::new(),
            pops: 0,
            steps: 0,
        };
        let slot = state.slot(target);
        state.scores[slot as usize] = alpha;
        state.priorities[slot as usize] = alpha;
        state.queue.insert(slot, target, alpha);
        Ok(state)
    }

    fn slot(&mut self, node: NodeId) -> u32 {
        if let Some(&slot) = self.slot_of.get(&node) {
            return slot;
        }
        let slot = self.nodes.len() as u32;
        self.slot_of.insert(node, slot);
        self.nodes.push(node);
        self.scores.push(F::zero());
        self.priorities.push(F::zero());
        slot
    }

    pub fn target(&self) -> NodeId {
        self.target
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    /// Current estimate `s(u)`.
    pub fn score(&self, u: NodeId) -> F {
        self.slot_of
            .get(&u)
            .map(|&s| self.scores[s as usize])
            .unwrap_or_else(F::zero)
    }

    /// Unpropagated part `p(u)` of the estimate.
    pub fn priority(&self, u: NodeId) -> F {
        self.slot_of
            .get(&u)
            .map(|&s| self.priorities[s as usize])
            .unwrap_or_else(F::zero)
    }

    /// Largest pending priority, with its node; `None` once the queue is
    /// drained.
    pub fn peek_max(&self) -> Option<(NodeId, F)> {
        self.queue.peek().map(|(_, node, pri)| (node, pri))
    }

    /// Largest pending priority, 0 when the queue is empty.
    pub fn max_priority(&self) -> F {
        self.peek_max().map(|(_, p)| p).unwrap_or_else(F::zero)
    }

    /// Nodes that have received any score so far.
    pub fn distinct_touched(&self) -> usize {
        self.nodes.len()
    }

    /// Propagations performed so far.
    pub fn pops(&self) -> u64 {
        self.pops
    }

    /// Inner-loop priority updates performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Propagates the pending score of `w` to its in-neighbors: each
    /// in-neighbor `u` gains `(1 - alpha) * p(w) * weight(u, w) /
    /// weighted_out_degree(u)` of score and priority. Requires `p(w) > 0`.
    ///
    /// `p(w)` is consumed before the pushes land, so a self-loop leaves `w`
    /// holding exactly its own freshly pushed share.
    pub fn propagate(&mut self, graph: &DirectedGraph<F>, w: NodeId) {
        let slot_w = *self.slot_of.get(&w).expect("propagate requires p(w) > 0");
        let pending = self.priorities[slot_w as usize];
        assert!(pending > F::zero(), "propagate requires p(w) > 0");
        self.priorities[slot_w as usize] = F::zero();
        self.queue.remove(slot_w);
        self.pops += 1;

        let scaled = (F::one() - self.alpha) * pending;
        for &(u, weight) in graph.in_edges(w) {
            self.steps += 1;
            let delta = scaled * weight / graph.weighted_out_degree(u);
            if delta > F::zero() {
                let slot_u = self.slot(u);
                self.scores[slot_u as usize] += delta;
                let pri = self.priorities[slot_u as usize] + delta;
                self.priorities[slot_u as usize] = pri;
                self.queue.insert_or_increase(slot_u, u, pri);
            }
        }
    }

    /// Max residual of the score recurrence over every node, sink included:
    /// `s(u)` must equal `alpha * [u = target] + (1 - alpha) * sum over
    /// out-edges (u, w) of weight / weighted_out_degree(u) * (s(w) - p(w))`.
    /// Intended for audits on small graphs; cost is `O(n + m)`.
    pub fn conservation_residual(&self, graph: &DirectedGraph<F>) -> F {
        let mut worst = F::zero();
        for u in 0..graph.node_count_with_sink() {
            let mut expected = if u == self.target {
                self.alpha
            } else {
                F::zero()
            };
            let wd = graph.weighted_out_degree(u);
            for &(w, weight) in graph.out_edges(u) {
                expected +=
                    (F::one() - self.alpha) * weight / wd * (self.score(w) - self.priority(w));
            }
            worst = worst.max((self.score(u) - expected).abs());
        }
        worst
    }

    fn stats(&self, wall_time: f64) -> PushStats {
        PushStats {
            pops: self.pops,
            steps: self.steps,
            distinct_touched: self.nodes.len(),
            wall_time,
        }
    }

    /// Extracts the sparse score estimate.
    pub fn into_scores(self) -> ScoreVector<F> {
        let entries = self
            .slot_of
            .iter()
            .map(|(&node, &slot)| (node, self.scores[slot as usize]))
            .collect();
        ScoreVector {
            target: self.target,
            alpha: self.alpha,
            entries,
        }
    }

    #[cfg(test)]
    fn inject_for_test(&mut self, node: NodeId, score: F, priority: F) {
        let slot = self.slot(node);
        self.scores[slot as usize] = score;
        self.priorities[slot as usize] = priority;
        self.queue.remove(slot);
        self.queue.insert(slot, node, priority);
    }
}

/// Approximates `pi(u, target)` for all `u` with additive error below
/// `epsilon`, running until every priority is at most `alpha * epsilon`.
pub fn ppr_to_target<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    epsilon: F,
    variant: Variant,
) -> Result<(ScoreVector<F>, PushStats)> {
    check_unit_interval(epsilon, "epsilon")?;
    check_unit_interval(alpha, "alpha")?;
    ppr_to_target_with_threshold(graph, target, alpha, alpha * epsilon, variant)
}

/// Reverse push with an explicit stop threshold instead of the default
/// `alpha * epsilon`. Exposed so tests can demonstrate that weaker
/// thresholds break the error guarantee; prefer [`ppr_to_target`].
#[doc(hidden)]
pub fn ppr_to_target_with_threshold<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    threshold: F,
    variant: Variant,
) -> Result<(ScoreVector<F>, PushStats)> {
    if !(threshold > F::zero()) || !threshold.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "stop threshold {threshold} must be positive and finite"
        )));
    }
    match variant {
        Variant::PriorityQueue => run_priority_queue(graph, target, alpha, threshold),
        Variant::WorkSet => run_work_set(graph, target, alpha, threshold),
    }
}

fn run_priority_queue<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    threshold: F,
) -> Result<(ScoreVector<F>, PushStats)> {
    let start = Instant::now();
    let mut state = PushState::new(graph, target, alpha)?;
    while let Some((node, pri)) = state.peek_max() {
        if pri <= threshold {
            break;
        }
        state.propagate(graph, node);
    }
    let stats = state.stats(start.elapsed().as_secs_f64());
    Ok((state.into_scores(), stats))
}

/// Queue-free variant: FIFO over the set of nodes with priority above the
/// threshold. Nodes at or below the threshold are never scheduled.
fn run_work_set<F: Float>(
    graph: &DirectedGraph<F>,
    target: NodeId,
    alpha: F,
    threshold: F,
) -> Result<(ScoreVector<F>, PushStats)> {
    use std::collections::VecDeque;

    let start = Instant::now();
    check_unit_interval(alpha, "alpha")?;
    if !graph.is_real_node(target) {
        return Err(Error::TargetOutOfRange {
            target,
            n: graph.n(),
        });
    }

    let mut slot_of: HashMap<NodeId, u32> = HashMap::new();
    let mut nodes: Vec<NodeId> = Vec::new();
    let mut scores: Vec<F> = Vec::new();
    let mut priorities: Vec<F> = Vec::new();
    let mut queued: Vec<bool> = Vec::new();
    let mut fifo: VecDeque<u32> = VecDeque::new();
    let mut pops = 0u64;
    let mut steps = 0u64;

    let slot = |node: NodeId,
                    nodes: &mut Vec<NodeId>,
                    scores: &mut Vec<F>,
                    priorities: &mut Vec<F>,
                    queued: &mut Vec<bool>,
                    slot_of: &mut HashMap<NodeId, u32>| {
        *slot_of.entry(node).or_insert_with(|| {
            let s = nodes.len() as u32;
            nodes.push(node);
            scores.push(F::zero());
            priorities.push(F::zero());
            queued.push(false);
            s
        })
    };

    let target_slot = slot(
        target,
        &mut nodes,
        &mut scores,
        &mut priorities,
        &mut queued,
        &mut slot_of,
    );
    scores[target_slot as usize] = alpha;
    priorities[target_slot as usize] = alpha;
    if alpha > threshold {
        queued[target_slot as usize] = true;
        fifo.push_back(target_slot);
    }

    while let Some(slot_w) = fifo.pop_front() {
        queued[slot_w as usize] = false;
        let w = nodes[slot_w as usize];
        let pending = priorities[slot_w as usize];
        priorities[slot_w as usize] = F::zero();
        pops += 1;
        let scaled = (F::one() - alpha) * pending;
        for &(u, weight) in graph.in_edges(w) {
            steps += 1;
            let delta = scaled * weight / graph.weighted_out_degree(u);
            if delta > F::zero() {
                let slot_u = slot(
                    u,
                    &mut nodes,
                    &mut scores,
                    &mut priorities,
                    &mut queued,
                    &mut slot_of,
                );
                scores[slot_u as usize] += delta;
                priorities[slot_u as usize] += delta;
                if priorities[slot_u as usize] > threshold && !queued[slot_u as usize] {
                    queued[slot_u as usize] = true;
                    fifo.push_back(slot_u);
                }
            }
        }
    }

    let stats = PushStats {
        pops,
        steps,
        distinct_touched: nodes.len(),
        wall_time: start.elapsed().as_secs_f64(),
    };
    let entries = slot_of
        .iter()
        .map(|(&node, &s)| (node, scores[s as usize]))
        .collect();
    Ok((
        ScoreVector {
            target,
            alpha,
            entries,
        },
        stats,
    ))
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedGraph;

    fn dead_end_single() -> DirectedGraph<f64> {
        DirectedGraph::from_unweighted(&[], Some(1)).unwrap()
    }

    fn two_cycle() -> DirectedGraph<f64> {
        DirectedGraph::from_unweighted(&[(0, 1), (1, 0)], None).unwrap()
    }

    fn self_loop() -> DirectedGraph<f64> {
        DirectedGraph::from_unweighted(&[(0, 0)], None).unwrap()
    }

    fn star(k: usize) -> DirectedGraph<f64> {
        // leaves 0..k point at hub k; hub is a dead end
        let edges: Vec<(usize, usize)> = (0..k).map(|u| (u, k)).collect();
        DirectedGraph::from_unweighted(&edges, Some(k + 1)).unwrap()
    }

    #[test]
    fn dead_end_target_is_exact() {
        let g = dead_end_single();
        let (scores, stats) =
            ppr_to_target(&g, 0, 0.2, 0.01, Variant::PriorityQueue).unwrap();
        assert_eq!(scores.get(0), 0.2);
        assert_eq!(scores.len(), 1);
        assert_eq!(stats.pops, 1);
        assert_eq!(stats.steps, 0);
    }

    #[test]
    fn two_cycle_matches_closed_form() {
        let g = two_cycle();
        let alpha = 0.2;
        for (eps, variant) in [
            (1e-2, Variant::PriorityQueue),
            (1e-6, Variant::PriorityQueue),
            (1e-6, Variant::WorkSet),
        ] {
            let (scores, _) = ppr_to_target(&g, 1, alpha, eps, variant).unwrap();
            let expect_target = 1.0 / (2.0 - alpha);
            let expect_other = (1.0 - alpha) / (2.0 - alpha);
            assert!((scores.get(1) - expect_target).abs() < eps);
            assert!((scores.get(0) - expect_other).abs() < eps);
        }
    }

    #[test]
    fn self_loop_accumulates_to_one() {
        let g = self_loop();
        let (alpha, eps) = (0.1, 1e-3);
        let (scores, stats) = ppr_to_target(&g, 0, alpha, eps, Variant::PriorityQueue).unwrap();
        assert!(scores.get(0) > 1.0 - eps);
        assert!(scores.get(0) <= 1.0);
        // p shrinks by (1 - alpha) per pop, so the pop count is the number
        // of factors needed to push alpha below alpha * eps.
        let expected_pops = (eps.ln() / (1.0 - alpha).ln()).ceil();
        assert!(
            (stats.pops as f64 - expected_pops).abs() <= 2.0,
            "pops {} vs expected {expected_pops}",
            stats.pops
        );
    }

    #[test]
    fn star_leaves_get_one_propagation_exactly() {
        let g = star(10);
        let alpha = 0.1;
        let mut state = PushState::new(&g, 10, alpha).unwrap();
        state.propagate(&g, 10);
        for leaf in 0..10 {
            assert_eq!(state.score(leaf), (1.0 - alpha) * alpha);
        }
        // full run ends with the same leaf scores
        let (scores, stats) = ppr_to_target(&g, 10, alpha, 1e-2, Variant::PriorityQueue).unwrap();
        for leaf in 0..10 {
            assert_eq!(scores.get(leaf), (1.0 - alpha) * alpha);
        }
        assert_eq!(stats.pops, 11);
        assert_eq!(stats.steps, 10);
    }

    #[test]
    fn propagate_without_in_neighbors_only_clears_priority() {
        let g = dead_end_single();
        let mut state = PushState::new(&g, 0, 0.3).unwrap();
        state.propagate(&g, 0);
        assert_eq!(state.score(0), 0.3);
        assert_eq!(state.priority(0), 0.0);
        assert_eq!(state.max_priority(), 0.0);
        assert_eq!(state.steps, 0);
    }

    #[test]
    fn propagate_applies_unweighted_update() {
        // u (node 0) with out-degree 2, one edge into w (node 1)
        let g: DirectedGraph<f64> = DirectedGraph::from_unweighted(&[(0, 1), (0, 2)], None).unwrap();
        let alpha = 0.2;
        let mut state = PushState::new(&g, 1, alpha).unwrap();
        state.inject_for_test(1, 0.2, 0.2);
        state.propagate(&g, 1);
        // delta = (1 - 0.2) * 0.2 / 2
        assert!((state.score(0) - 0.08).abs() < 1e-15);
    }

    #[test]
    fn propagate_applies_weighted_update() {
        // u (node 0): weight 2 into w (node 1), weight 2 elsewhere -> weighted out-degree 4
        let g: DirectedGraph<f64> =
            DirectedGraph::from_edge_list(&[(0, 1, 2.0), (0, 2, 2.0)], None).unwrap();
        let alpha = 0.2;
        let mut state = PushState::new(&g, 1, alpha).unwrap();
        state.inject_for_test(1, 0.1, 0.1);
        state.propagate(&g, 1);
        // delta = (1 - 0.2) * 0.1 * 2 / 4
        assert!((state.score(0) - 0.04).abs() < 1e-15);
    }

    #[test]
    fn self_loop_keeps_own_push_share() {
        let g = self_loop();
        let alpha = 0.25;
        let mut state = PushState::new(&g, 0, alpha).unwrap();
        state.propagate(&g, 0);
        assert_eq!(state.priority(0), (1.0 - alpha) * alpha);
        assert_eq!(state.score(0), alpha + (1.0 - alpha) * alpha);
    }

    #[test]
    fn conservation_holds_after_every_propagate() {
        for g in [two_cycle(), self_loop(), star(4)] {
            let alpha = 0.15;
            let mut state = PushState::new(&g, 0, alpha).unwrap();
            while let Some((node, pri)) = state.peek_max() {
                if pri <= alpha * 1e-6 {
                    break;
                }
                state.propagate(&g, node);
                let residual = state.conservation_residual(&g);
                assert!(residual < 1e-9, "residual {residual}");
            }
        }
    }

    #[test]
    fn queue_always_pops_current_maximum() {
        let g = crate::graph::generate_uniform_random(40, 4.0, 5).unwrap();
        let alpha = 0.2;
        let mut state = PushState::new(&g, 3, alpha).unwrap();
        while let Some((node, pri)) = state.peek_max() {
            if pri <= alpha * 1e-4 {
                break;
            }
            let manual_max = (0..g.n())
                .map(|u| state.priority(u))
                .fold(0.0f64, f64::max);
            assert_eq!(pri, manual_max);
            state.propagate(&g, node);
        }
    }

    #[test]
    fn equal_priorities_pop_lowest_node_first() {
        let g = star(3);
        let alpha = 0.1;
        let mut state = PushState::new(&g, 3, alpha).unwrap();
        state.propagate(&g, 3);
        // all three leaves now hold identical priorities
        assert_eq!(state.peek_max().unwrap().0, 0);
        state.propagate(&g, 0);
        assert_eq!(state.peek_max().unwrap().0, 1);
    }

    #[test]
    fn scores_monotone_nondecreasing_over_run() {
        let g = crate::graph::generate_uniform_random(30, 3.0, 11).unwrap();
        let alpha = 0.2;
        let mut state = PushState::new(&g, 7, alpha).unwrap();
        let mut snapshot: Vec<f64> = (0..g.n()).map(|u| state.score(u)).collect();
        while let Some((node, pri)) = state.peek_max() {
            if pri <= alpha * 1e-5 {
                break;
            }
            state.propagate(&g, node);
            for u in 0..g.n() {
                let now = state.score(u);
                assert!(now >= snapshot[u]);
                snapshot[u] = now;
            }
        }
    }

    #[test]
    fn work_set_finishes_below_threshold() {
        let g = crate::graph::generate_uniform_random(50, 5.0, 2).unwrap();
        let (alpha, eps) = (0.1, 1e-3);
        let (scores, stats) = ppr_to_target(&g, 0, alpha, eps, Variant::WorkSet).unwrap();
        assert!(stats.pops > 0);
        assert!(scores.get(0) >= alpha);
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let g = two_cycle();
        assert!(ppr_to_target(&g, 0, 0.0, 1e-2, Variant::PriorityQueue).is_err());
        assert!(ppr_to_target(&g, 0, 1.0, 1e-2, Variant::PriorityQueue).is_err());
        assert!(ppr_to_target(&g, 0, 0.2, 0.0, Variant::PriorityQueue).is_err());
        assert!(ppr_to_target(&g, 0, 0.2, 1.0, Variant::PriorityQueue).is_err());
        // the sink (id 2) and anything past it are not valid targets
        assert!(matches!(
            ppr_to_target(&g, 2, 0.2, 1e-2, Variant::PriorityQueue),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert!(ppr_to_target(&g, 99, 0.2, 1e-2, Variant::WorkSet).is_err());
    }

    #[test]
    fn tsv_output_is_sorted_and_headed() {
        let g = two_cycle();
        let (scores, _) = ppr_to_target(&g, 1, 0.2, 1e-6, Variant::PriorityQueue).unwrap();
        let tsv = scores.to_tsv(1e-6, Variant::PriorityQueue);
        let mut lines = tsv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "# target=1 alpha=0.2 epsilon=0.000001 variant=pq"
        );
        let rows: Vec<(usize, f64)> = lines
            .map(|l| {
                let (node, score) = l.split_once('\t').unwrap();
                (node.parse().unwrap(), score.parse().unwrap())
            })
            .collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].0, 1); // target has the larger score
        assert!(rows[0].1 > rows[1].1);
    }

    #[test]
    fn variant_names_round_trip() {
        assert_eq!("pq".parse::<Variant>().unwrap(), Variant::PriorityQueue);
        assert_eq!("set".parse::<Variant>().unwrap(), Variant::WorkSet);
        assert_eq!(
            "work_set".parse::<Variant>().unwrap().to_string(),
            "set"
        );
        assert!("fancy".parse::<Variant>().is_err());
    }
}
