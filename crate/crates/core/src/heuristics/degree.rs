//! Degree centrality and the two discount variants.

use super::queue::LazyMaxQueue;
use super::{check_k, SeedSet};
use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::icm::check_probability;

/// The `k` vertices of highest degree, highest first.
pub fn max_degree(g: &Graph, k: usize) -> Result<SeedSet> {
    check_k(g, k)?;
    Ok(SeedSet::from_vec_unchecked(
        degree_order(g).into_iter().take(k).collect(),
    ))
}

/// All vertices by decreasing degree, lowest id first among equals.
pub(crate) fn degree_order(g: &Graph) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    order
}

/// Degree heuristic that, after each pick `u`, lowers every neighbour's
/// working degree by `c(u, v)`.
pub fn single_discount(g: &Graph, k: usize) -> Result<SeedSet> {
    check_k(g, k)?;
    let mut working: Vec<i64> = g.degrees().iter().map(|&d| d as i64).collect();
    let mut queue = LazyMaxQueue::new(working.iter().map(|&d| d as f64));
    let mut seeds = Vec::with_capacity(k);
    while seeds.len() < k {
        let u = queue.pop().expect("k <= n");
        seeds.push(u);
        for (v, c) in g.adjacency(u) {
            if !queue.is_taken(v) {
                working[v.index()] -= i64::from(c);
                queue.update(v, working[v.index()] as f64);
            }
        }
    }
    Ok(SeedSet::from_vec_unchecked(seeds))
}

/// Discounted degree `d - 2t - (d - t) * t * p` of a vertex with degree `d`
/// and `t` edges (with multiplicity) to already selected seeds.
pub fn discounted_degree(d: u64, t: u64, p: f64) -> f64 {
    let (d, t) = (d as f64, t as f64);
    d - 2.0 * t - (d - t) * t * p
}

/// Degree discount: ranks by [`discounted_degree`], updating the neighbours
/// of every selected seed.
pub fn degree_discount(g: &Graph, k: usize, p: f64) -> Result<SeedSet> {
    check_k(g, k)?;
    check_probability(p)?;
    let mut t = vec![0u64; g.n()];
    let mut queue = LazyMaxQueue::new(g.degrees().iter().map(|&d| d as f64));
    let mut seeds = Vec::with_capacity(k);
    while seeds.len() < k {
        let u = queue.pop().expect("k <= n");
        seeds.push(u);
        for (v, c) in g.adjacency(u) {
            if !queue.is_taken(v) {
                t[v.index()] += u64::from(c);
                queue.update(v, discounted_degree(g.degree(v), t[v.index()], p));
            }
        }
    }
    Ok(SeedSet::from_vec_unchecked(seeds))
}
