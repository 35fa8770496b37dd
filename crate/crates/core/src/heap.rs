//! Array-backed indexed binary max-heap with increase-key.
//!
//! Entries are keyed by arena slot (dense index assigned in discovery
//! order); the position map is a plain vector over slots, so all heap
//! operations are pointer-chasing-free. Ties on priority break toward the
//! smaller node id, which makes pop order fully deterministic.

use crate::graph::NodeId;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Entry<P> {
    pri: P,
    node: NodeId,
    slot: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct IndexedMaxHeap<P> {
    entries: Vec<Entry<P>>,
    pos: Vec<u32>,
}

impl<P: PartialOrd + Copy> IndexedMaxHeap<P> {
    pub fn new() -> Self {
        IndexedMaxHeap {
            entries: Vec::new(),
            pos: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, slot: u32) -> bool {
        (slot as usize) < self.pos.len() && self.pos[slot as usize] != ABSENT
    }

    /// Highest-priority entry as `(slot, node, priority)`.
    pub fn peek(&self) -> Option<(u32, NodeId, P)> {
        self.entries.first().map(|e| (e.slot, e.node, e.pri))
    }

    /// Inserts a slot that must not already be present.
    pub fn insert(&mut self, slot: u32, node: NodeId, pri: P) {
        debug_assert!(!self.contains(slot));
        if self.pos.len() <= slot as usize {
            self.pos.resize(slot as usize + 1, ABSENT);
        }
        let idx = self.entries.len();
        self.entries.push(Entry { pri, node, slot });
        self.pos[slot as usize] = idx as u32;
        self.sift_up(idx);
    }

    /// Raises the priority of a present slot.
    pub fn increase(&mut self, slot: u32, pri: P) {
        let idx = self.pos[slot as usize] as usize;
        debug_assert!(self.entries[idx].pri <= pri);
        self.entries[idx].pri = pri;
        self.sift_up(idx);
    }

    /// Inserts or raises, whichever applies.
    pub fn insert_or_increase(&mut self, slot: u32, node: NodeId, pri: P) {
        if self.contains(slot) {
            self.increase(slot, pri);
        } else {
            self.insert(slot, node, pri);
        }
    }

    #[cfg(test)]
    pub fn pop(&mut self) -> Option<(u32, NodeId, P)> {
        let top = self.peek()?;
        self.remove_at(0);
        Some(top)
    }

    /// Removes an arbitrary slot, returning its priority.
    pub fn remove(&mut self, slot: u32) -> Option<P> {
        if !self.contains(slot) {
            return None;
        }
        let idx = self.pos[slot as usize] as usize;
        let pri = self.entries[idx].pri;
        self.remove_at(idx);
        Some(pri)
    }

    fn remove_at(&mut self, idx: usize) {
        let last = self.entries.len() - 1;
        self.pos[self.entries[idx].slot as usize] = ABSENT;
        if idx != last {
            self.entries.swap(idx, last);
            self.pos[self.entries[idx].slot as usize] = idx as u32;
        }
        self.entries.pop();
        if idx < self.entries.len() {
            self.sift_down(idx);
            self.sift_up(idx);
        }
    }

    fn beats(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.entries[a], &self.entries[b]);
        ea.pri > eb.pri || (ea.pri == eb.pri && ea.node < eb.node)
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
        self.pos[self.entries[a].slot as usize] = a as u32;
        self.pos[self.entries[b].slot as usize] = b as u32;
    }

    fn sift_up(&mut self, mut idx: usize) {
        while idx > 0 {
            let parent = (idx - 1) / 2;
            if !self.beats(idx, parent) {
                break;
            }
            self.swap(idx, parent);
            idx = parent;
        }
    }

    fn sift_down(&mut self, mut idx: usize) {
        loop {
            let mut best = idx;
            for child in [2 * idx + 1, 2 * idx + 2] {
                if child < self.entries.len() && self.beats(child, best) {
                    best = child;
                }
            }
            if best == idx {
                return;
            }
            self.swap(idx, best);
            idx = best;
        }
    }
}
