//! DegreeDecrease: highest priority first, where each pick pushes priority
//! reductions outward through the still-unselected vertices.
//!
//! Priorities start at the degree. When `u` is selected it receives the
//! reduction `alpha`; a vertex `v` holding reduction `dd(v) > epsilon`
//! passes `dd(w) = dd(v) * c(v, w) * beta * p` to each unvisited candidate
//! neighbour `w`, whose priority then drops by `dd(w)`. Every vertex is
//! reached at most once per round and keeps the first reduction assigned.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, VecDeque};

use super::queue::LazyMaxQueue;
use super::{check_k, HeuristicParams, QueueOrder, SeedSet};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::icm::check_probability;

pub fn degree_decrease(g: &Graph, k: usize, p: f64, params: &HeuristicParams) -> Result<SeedSet> {
    check_k(g, k)?;
    check_probability(p)?;
    params.validate()?;

    let n = g.n();
    let factor = params.beta * p;
    let mut priority: Vec<f64> = g.degrees().iter().map(|&d| d as f64).collect();
    let mut candidates = LazyMaxQueue::new(priority.iter().copied());
    let mut reduction = vec![0.0f64; n];
    let mut visited = vec![0u32; n];
    let mut frontier = Frontier::new(params.queue_order);
    let mut seeds = Vec::with_capacity(k);

    for round in 1..=k as u32 {
        let u = candidates.pop().expect("k <= n");
        seeds.push(u);
        if seeds.len() == k {
            break;
        }

        visited[u.index()] = round;
        reduction[u.index()] = params.alpha;
        frontier.push(u, priority[u.index()]);
        while let Some(v) = frontier.pop() {
            let dv = reduction[v.index()];
            if dv <= params.epsilon {
                continue;
            }
            for (w, c) in g.adjacency(v) {
                if visited[w.index()] == round || candidates.is_taken(w) {
                    continue;
                }
                visited[w.index()] = round;
                let dw = dv * f64::from(c) * factor;
                reduction[w.index()] = dw;
                priority[w.index()] -= dw;
                candidates.update(w, priority[w.index()]);
                frontier.push(w, priority[w.index()]);
            }
        }
    }
    Ok(SeedSet::from_vec_unchecked(seeds))
}

#[derive(Debug)]
struct ByPriority(f64, VertexId);

impl PartialEq for ByPriority {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ByPriority {}

impl PartialOrd for ByPriority {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByPriority {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

enum Frontier {
    Fifo(VecDeque<VertexId>),
    MinPriority(BinaryHeap<Reverse<ByPriority>>),
}

impl Frontier {
    fn new(order: QueueOrder) -> Self {
        match order {
            QueueOrder::Fifo => Frontier::Fifo(VecDeque::new()),
            QueueOrder::MinPriority => Frontier::MinPriority(BinaryHeap::new()),
        }
    }

    fn push(&mut self, v: VertexId, priority: f64) {
        match self {
            Frontier::Fifo(q) => q.push_back(v),
            Frontier::MinPriority(h) => h.push(Reverse(ByPriority(priority, v))),
        }
    }

    fn pop(&mut self) -> Option<VertexId> {
        match self {
            Frontier::Fifo(q) => q.pop_front(),
            Frontier::MinPriority(h) => h.pop().map(|Reverse(ByPriority(_, v))| v),
        }
    }
}
