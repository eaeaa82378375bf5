//! Seed-selection algorithms.
//!
//! Every algorithm returns seeds in selection order and breaks ties by the
//! lowest vertex id, so a `k`-seed run is always a prefix of a longer run.

mod celf;
mod degree;
mod degree_decrease;
mod neighbors_remove;
mod queue;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::icm::{check_probability, validate_seeds};

pub use celf::{greedy_celf, GreedyEvaluator};
pub use degree::{degree_discount, max_degree, single_discount};
pub use degree_decrease::degree_decrease;
pub use neighbors_remove::{compute_h, neighbors_remove};

/// Extraction order of the reduction search in [`degree_decrease`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum QueueOrder {
    /// Plain breadth-first order; reductions follow shortest paths.
    #[default]
    Fifo,
    /// Always expand the queued vertex of lowest current priority.
    /// Experimental.
    MinPriority,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct HeuristicParams {
    /// Reduction assigned to the seed itself in DegreeDecrease.
    pub alpha: f64,
    /// Slope of the per-hop reduction factor `beta * p`.
    pub beta: f64,
    /// Reductions at or below this value are not propagated further.
    pub epsilon: f64,
    /// Fixed hop radius for NeighborsRemove instead of the `p`-derived one.
    pub h_override: Option<u32>,
    pub queue_order: QueueOrder,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            alpha: 50.0,
            beta: 10.0,
            epsilon: 0.1,
            h_override: None,
            queue_order: QueueOrder::Fifo,
        }
    }
}

impl HeuristicParams {
    // negated comparisons so that NaN is rejected too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must be >= 0",
                self.alpha
            )));
        }
        if !(self.beta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "beta = {} must be >= 0",
                self.beta
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon = {} must be > 0",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Ordered, duplicate-free list of seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSet(Vec<VertexId>);

impl SeedSet {
    pub fn new(g: &Graph, seeds: Vec<VertexId>) -> Result<Self> {
        validate_seeds(g, &seeds)?;
        Ok(SeedSet(seeds))
    }

    /// Caller guarantees distinct, valid ids.
    pub(crate) fn from_vec_unchecked(seeds: Vec<VertexId>) -> Self {
        SeedSet(seeds)
    }

    /// The first `k` seeds (all of them when `k` exceeds the length).
    pub fn prefix(&self, k: usize) -> &[VertexId] {
        &self.0[..k.min(self.0.len())]
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }
}

impl Deref for SeedSet {
    type Target = [VertexId];

    fn deref(&self) -> &[VertexId] {
        &self.0
    }
}

pub(crate) fn check_k(g: &Graph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > g.n() {
        return Err(Error::TooManySeeds { k, n: g.n() });
    }
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    MaxDegree,
    SingleDiscount,
    DegreeDiscount,
    NeighborsRemove,
    DegreeDecrease,
    GreedyCelf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::MaxDegree,
        Algorithm::SingleDiscount,
        Algorithm::DegreeDiscount,
        Algorithm::NeighborsRemove,
        Algorithm::DegreeDecrease,
        Algorithm::GreedyCelf,
    ];

    /// The degree-based heuristics, i.e. everything but the greedy oracle.
    pub const HEURISTICS: [Algorithm; 5] = [
        Algorithm::MaxDegree,
        Algorithm::SingleDiscount,
        Algorithm::DegreeDiscount,
        Algorithm::NeighborsRemove,
        Algorithm::DegreeDecrease,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MaxDegree => "max-degree",
            Algorithm::SingleDiscount => "single-discount",
            Algorithm::DegreeDiscount => "degree-discount",
            Algorithm::NeighborsRemove => "neighbors-remove",
            Algorithm::DegreeDecrease => "degree-decrease",
            Algorithm::GreedyCelf => "greedy-celf",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_owned()))
    }
}

/// Everything an algorithm may need beyond the graph and `k`.
#[derive(Copy, Clone, Debug)]
pub struct Selection {
    pub p: f64,
    pub params: HeuristicParams,
    /// Spread evaluation used by [`Algorithm::GreedyCelf`].
    pub greedy: GreedyEvaluator,
}

impl Selection {
    pub fn new(p: f64, params: HeuristicParams) -> Self {
        Selection {
            p,
            params,
            greedy: GreedyEvaluator::MonteCarlo {
                replications: 10_000,
                seed: 0,
            },
        }
    }

    pub fn with_greedy(mut self, greedy: GreedyEvaluator) -> Self {
        self.greedy = greedy;
        self
    }
}

/// Runs `algo` for `k` seeds.
pub fn select(g: &Graph, algo: Algorithm, k: usize, sel: &Selection) -> Result<SeedSet> {
    check_probability(sel.p)?;
    match algo {
        Algorithm::MaxDegree => max_degree(g, k),
        Algorithm::SingleDiscount => single_discount(g, k),
        Algorithm::DegreeDiscount => degree_discount(g, k, sel.p),
        Algorithm::NeighborsRemove => neighbors_remove(g, k, sel.p, &sel.params),
        Algorithm::DegreeDecrease => degree_decrease(g, k, sel.p, &sel.params),
        Algorithm::GreedyCelf => greedy_celf(g, k, sel.p, sel.greedy),
    }
}

/// Full selection order of length `len`. Because every algorithm is
/// prefix-consistent, `rank_all(..)[..k]` equals `select(.., k, ..)`.
pub fn rank_all(g: &Graph, algo: Algorithm, len: usize, sel: &Selection) -> Result<SeedSet> {
    select(g, algo, len, sel)
}
