//! NeighborsRemove: highest degree first, but every pick removes its
//! `h`-hop neighbourhood from the candidate pool.

use super::degree::degree_order;
use super::{check_k, HeuristicParams, SeedSet};
use crate::error::Result;
use crate::graph::{Graph, HopBfs};
use crate::icm::check_probability;

/// Hop radius `round(12 * sqrt(p))`, halves rounded up.
pub fn compute_h(p: f64) -> u32 {
    (12.0 * p.max(0.0).sqrt()).round() as u32
}

/// Selects by original degree among surviving candidates; after each pick
/// `u`, every vertex within `h` hops of `u` stops being a candidate, where
/// `h` is `params.h_override` or [`compute_h`]. Should the candidate pool
/// run dry before `k` seeds are chosen, the remaining seeds are the highest
/// degree vertices not yet selected.
pub fn neighbors_remove(g: &Graph, k: usize, p: f64, params: &HeuristicParams) -> Result<SeedSet> {
    check_k(g, k)?;
    check_probability(p)?;
    let h = params.h_override.unwrap_or_else(|| compute_h(p));

    let order = degree_order(g);
    let mut removed = vec![false; g.n()];
    let mut selected = vec![false; g.n()];
    let mut bfs = HopBfs::new(g.n());
    let mut seeds = Vec::with_capacity(k);

    let mut candidates = order.iter().copied();
    while seeds.len() < k {
        let Some(u) = candidates.by_ref().find(|v| !removed[v.index()]) else {
            break;
        };
        seeds.push(u);
        selected[u.index()] = true;
        if seeds.len() < k {
            bfs.run(g, u, h, |v| removed[v.index()] = true);
        }
    }

    if seeds.len() < k {
        let rest = order.iter().copied().filter(|v| !selected[v.index()]);
        seeds.extend(rest.take(k - seeds.len()));
    }
    Ok(SeedSet::from_vec_unchecked(seeds))
}
