//! Lazy-forward greedy (CELF) over estimated or exact spreads.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{check_k, SeedSet};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::icm::{estimate_spread, LiveEdgeOracle, SimConfig};
use crate::rng::mix;

/// How the greedy algorithm scores a candidate seed set.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GreedyEvaluator {
    /// Live-edge enumeration; only for graphs within the exact edge limit.
    Exact,
    /// Monte-Carlo estimation. Every evaluation draws fresh replication
    /// streams derived from `seed` and a running evaluation counter.
    MonteCarlo { replications: usize, seed: u64 },
}

enum Scorer {
    Exact(LiveEdgeOracle),
    MonteCarlo { cfg: SimConfig, calls: u64 },
}

impl Scorer {
    fn spread(&mut self, g: &Graph, seeds: &[VertexId]) -> Result<f64> {
        match self {
            Scorer::Exact(oracle) => Ok(oracle.spreads(&[seeds])[0]),
            Scorer::MonteCarlo { cfg, calls } => {
                let fresh = cfg.with_seed(mix(cfg.seed, *calls));
                *calls += 1;
                Ok(estimate_spread(g, seeds, &fresh)?.mean)
            }
        }
    }
}

/// Marginal gains are compared on a 1e-9 grid so that gains which are equal
/// in exact arithmetic but differ in the last bits still tie, and the tie
/// goes to the lowest id.
pub(crate) fn gain_key(gain: f64) -> i64 {
    (gain * 1e9).round() as i64
}

struct Candidate {
    key: i64,
    vertex: VertexId,
    /// Spread of the current seeds plus this vertex at evaluation time.
    spread: f64,
    /// Seed count when the gain was computed.
    round: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.key, Reverse(self.vertex)).cmp(&(other.key, Reverse(other.vertex)))
    }
}

/// Greedy hill climbing with lazy re-evaluation. Cached marginal gains are
/// upper bounds by submodularity, so only the top candidate is refreshed
/// until the top is current for this round; that candidate is committed.
pub fn greedy_celf(g: &Graph, k: usize, p: f64, evaluator: GreedyEvaluator) -> Result<SeedSet> {
    check_k(g, k)?;
    let mut scorer = match evaluator {
        GreedyEvaluator::Exact => Scorer::Exact(LiveEdgeOracle::new(g, p)?),
        GreedyEvaluator::MonteCarlo { replications, seed } => Scorer::MonteCarlo {
            cfg: SimConfig::new(p, replications, seed)?,
            calls: 0,
        },
    };

    let mut heap = BinaryHeap::with_capacity(g.n());
    for v in g.vertices() {
        let spread = scorer.spread(g, &[v])?;
        heap.push(Candidate {
            key: gain_key(spread),
            vertex: v,
            spread,
            round: 0,
        });
    }

    let mut seeds: Vec<VertexId> = Vec::with_capacity(k);
    let mut base = 0.0;
    let mut trial = Vec::with_capacity(k);
    while seeds.len() < k {
        let top = heap.pop().expect("k <= n");
        if top.round == seeds.len() {
            seeds.push(top.vertex);
            base = top.spread;
            continue;
        }
        trial.clear();
        trial.extend_from_slice(&seeds);
        trial.push(top.vertex);
        let spread = scorer.spread(g, &trial)?;
        heap.push(Candidate {
            key: gain_key(spread - base),
            vertex: top.vertex,
            spread,
            round: seeds.len(),
        });
    }
    Ok(SeedSet::from_vec_unchecked(seeds))
}
