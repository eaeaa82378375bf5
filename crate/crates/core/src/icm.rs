//! Independent cascade model: single cascades, a Monte-Carlo spread
//! estimator and an exact live-edge enumeration oracle for small graphs.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::rng::replication_rng;

/// Largest edge count (parallel edges counted) accepted by [`exact_spread`].
pub const EXACT_EDGE_LIMIT: usize = 25;

/// Replications handed to one worker task at a time.
const CHUNK: usize = 256;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SimConfig {
    /// Activation probability of a single edge attempt.
    pub p: f64,
    pub replications: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(p: f64, replications: usize, seed: u64) -> Result<Self> {
        let cfg = SimConfig {
            p,
            replications,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p)?;
        if self.replications == 0 {
            return Err(Error::InvalidParameter(
                "replication count must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Same settings with a different master seed.
    pub fn with_seed(self, seed: u64) -> Self {
        SimConfig { seed, ..self }
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SpreadEstimate {
    pub mean: f64,
    /// Standard error of the mean (sample standard deviation / sqrt(R)).
    pub std_error: f64,
    pub replications: usize,
}

/// Checks that `seeds` is a non-empty set of distinct, valid vertices.
pub fn validate_seeds(g: &Graph, seeds: &[VertexId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    let mut seen = vec![false; g.n()];
    for &s in seeds {
        g.check_vertex(s)?;
        if std::mem::replace(&mut seen[s.index()], true) {
            return Err(Error::DuplicateSeed(s.index()));
        }
    }
    Ok(())
}

/// Per-worker scratch for running cascades without reallocating.
#[derive(Debug)]
pub struct Cascade {
    active: Vec<u32>,
    epoch: u32,
    frontier: Vec<VertexId>,
    next: Vec<VertexId>,
}

impl Cascade {
    pub fn new(n: usize) -> Self {
        Cascade {
            active: vec![0; n],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    /// Runs one cascade from `seeds` (assumed valid and distinct) and returns
    /// the number of activated vertices.
    ///
    /// Each timestamp processes the frontier in ascending id order; every
    /// frontier vertex tries each still-inactive neighbour once, with one
    /// Bernoulli(p) trial per parallel edge.
    pub fn run<R: Rng + ?Sized>(
        &mut self,
        g: &Graph,
        seeds: &[VertexId],
        p: f64,
        rng: &mut R,
    ) -> usize {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.active.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;

        self.frontier.clear();
        for &s in seeds {
            self.active[s.index()] = epoch;
            self.frontier.push(s);
        }
        let mut count = seeds.len();
        if p <= 0.0 {
            return count;
        }

        while !self.frontier.is_empty() {
            self.frontier.sort_unstable();
            self.next.clear();
            for &u in &self.frontier {
                for (v, c) in g.adjacency(u) {
                    if self.active[v.index()] == epoch {
                        continue;
                    }
                    if (0..c).any(|_| rng.gen::<f64>() < p) {
                        self.active[v.index()] = epoch;
                        self.next.push(v);
                        count += 1;
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        count
    }
}

/// One cascade from `seeds`; returns the number of activated vertices.
pub fn simulate_once<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[VertexId],
    p: f64,
    rng: &mut R,
) -> Result<usize> {
    validate_seeds(g, seeds)?;
    check_probability(p)?;
    Ok(Cascade::new(g.n()).run(g, seeds, p, rng))
}

/// Monte-Carlo estimate of the expected spread of `seeds`.
///
/// Replication `i` draws from a stream fixed by `(cfg.seed, i)` and the
/// per-replication counts are summed as integers, so the result is
/// bit-identical for any number of rayon workers.
pub fn estimate_spread(g: &Graph, seeds: &[VertexId], cfg: &SimConfig) -> Result<SpreadEstimate> {
    validate_seeds(g, seeds)?;
    cfg.validate()?;

    let r = cfg.replications;
    let chunks = r.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map_init(
            || Cascade::new(g.n()),
            |cascade, chunk| {
                let lo = chunk * CHUNK;
                let hi = (lo + CHUNK).min(r);
                let mut sum = 0u128;
                let mut sum_sq = 0u128;
                for i in lo..hi {
                    let mut rng = replication_rng(cfg.seed, i as u64);
                    let x = cascade.run(g, seeds, cfg.p, &mut rng) as u128;
                    sum += x;
                    sum_sq += x * x;
                }
                (sum, sum_sq)
            },
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    Ok(summarize(sum, sum_sq, r))
}

fn summarize(sum: u128, sum_sq: u128, r: usize) -> SpreadEstimate {
    let rf = r as f64;
    let mean = sum as f64 / rf;
    let std_error = if r > 1 {
        // r * sum_sq - sum^2 is exact in integers and never negative
        let centered = (r as u128 * sum_sq - sum * sum) as f64;
        let variance = centered / (rf * (rf - 1.0));
        (variance / rf).sqrt()
    } else {
        0.0
    };
    SpreadEstimate {
        mean,
        std_error,
        replications: r,
    }
}

/// Exact expected spread by enumerating every live-edge subgraph.
///
/// Each of the `m <= 25` edges is live independently with probability `p`.
/// Parallel edges between the same pair are folded into one pair that is
/// live with probability `1 - (1 - p)^c`, which yields the same
/// distribution over reachable sets with fewer outcomes to visit.
pub fn exact_spread(g: &Graph, seeds: &[VertexId], p: f64) -> Result<f64> {
    validate_seeds(g, seeds)?;
    let oracle = LiveEdgeOracle::new(g, p)?;
    Ok(oracle.spreads(&[seeds])[0])
}

/// Live-edge enumeration prepared once for a graph and probability, able to
/// evaluate many seed sets in a single pass over the outcomes.
#[derive(Debug)]
pub struct LiveEdgeOracle {
    /// Dense index of each non-isolated vertex, `usize::MAX` when isolated.
    local: Vec<usize>,
    local_count: usize,
    /// (a, b, live probability) over local ids.
    pairs: Vec<(usize, usize, f64)>,
}

impl LiveEdgeOracle {
    pub fn new(g: &Graph, p: f64) -> Result<Self> {
        check_probability(p)?;
        if g.m() > EXACT_EDGE_LIMIT {
            return Err(Error::TooLargeForEnumeration {
                edges: g.m(),
                limit: EXACT_EDGE_LIMIT,
            });
        }
        let mut local = vec![usize::MAX; g.n()];
        let mut local_count = 0;
        for u in g.vertices() {
            if g.degree(u) > 0 {
                local[u.index()] = local_count;
                local_count += 1;
            }
        }
        let pairs = g
            .edges()
            .map(|(u, v, c)| {
                let live = 1.0 - (1.0 - p).powi(c as i32);
                (local[u.index()], local[v.index()], live)
            })
            .collect();
        Ok(LiveEdgeOracle {
            local,
            local_count,
            pairs,
        })
    }

    /// Exact spread of each seed set (each assumed valid and distinct).
    pub fn spreads(&self, seed_sets: &[&[VertexId]]) -> Vec<f64> {
        let mut totals = vec![0.0f64; seed_sets.len()];
        let mut parent = vec![0usize; self.local_count];
        let mut size = vec![0usize; self.local_count];
        let mut seen = vec![usize::MAX; self.local_count];

        // isolated seeds contribute exactly one each
        let isolated: Vec<usize> = seed_sets
            .iter()
            .map(|s| {
                s.iter()
                    .filter(|v| self.local[v.index()] == usize::MAX)
                    .count()
            })
            .collect();

        let e = self.pairs.len();
        for mask in 0u64..(1u64 << e) {
            let mut weight = 1.0;
            for (bit, &(_, _, q)) in self.pairs.iter().enumerate() {
                weight *= if mask >> bit & 1 == 1 { q } else { 1.0 - q };
            }
            if weight == 0.0 {
                continue;
            }
            for i in 0..self.local_count {
                parent[i] = i;
                size[i] = 1;
            }
            for (bit, &(a, b, _)) in self.pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        let (big, small) = if size[ra] >= size[rb] {
                            (ra, rb)
                        } else {
                            (rb, ra)
                        };
                        parent[small] = big;
                        size[big] += size[small];
                    }
                }
            }
            for (slot, seeds) in seed_sets.iter().enumerate() {
                let mut reached = 0usize;
                for v in seeds.iter() {
                    let l = self.local[v.index()];
                    if l == usize::MAX {
                        continue;
                    }
                    let root = find(&mut parent, l);
                    if seen[root] != slot {
                        seen[root] = slot;
                        reached += size[root];
                    }
                }
                // reset marks for the next outcome
                for v in seeds.iter() {
                    let l = self.local[v.index()];
                    if l != usize::MAX {
                        let root = find(&mut parent, l);
                        seen[root] = usize::MAX;
                    }
                }
                totals[slot] += weight * reached as f64;
            }
        }
        totals
            .into_iter()
            .zip(isolated)
            .map(|(t, iso)| t + iso as f64)
            .collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
