use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::VertexId;

#[derive(Debug)]
struct Entry {
    key: f64,
    id: VertexId,
    version: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // larger key first, then lower id first
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Max-priority queue over vertices with arbitrary key updates. Updates
/// push a fresh entry and bump the vertex's version; outdated entries are
/// discarded when they surface. Ties go to the lowest vertex id.
#[derive(Debug)]
pub(crate) struct LazyMaxQueue {
    heap: BinaryHeap<Entry>,
    version: Vec<u32>,
    taken: Vec<bool>,
}

impl LazyMaxQueue {
    pub(crate) fn new(keys: impl ExactSizeIterator<Item = f64>) -> Self {
        let n = keys.len();
        let entries: Vec<Entry> = keys
            .enumerate()
            .map(|(i, key)| Entry {
                key,
                id: VertexId::new(i),
                version: 0,
            })
            .collect();
        LazyMaxQueue {
            heap: BinaryHeap::from(entries),
            version: vec![0; n],
            taken: vec![false; n],
        }
    }

    pub(crate) fn update(&mut self, id: VertexId, key: f64) {
        if self.taken[id.index()] {
            return;
        }
        let version = &mut self.version[id.index()];
        *version += 1;
        self.heap.push(Entry {
            key,
            id,
            version: *version,
        });
    }

    pub(crate) fn is_taken(&self, id: VertexId) -> bool {
        self.taken[id.index()]
    }

    /// Removes and returns the current maximum.
    pub(crate) fn pop(&mut self) -> Option<VertexId> {
        while let Some(e) = self.heap.pop() {
            let i = e.id.index();
            if self.taken[i] || e.version != self.version[i] {
                continue;
            }
            self.taken[i] = true;
            return Some(e.id);
        }
        None
    }
}
