//! Synthetic graphs for tests and desk-scale experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Barabási–Albert preferential attachment. Starts from a clique on
/// `edges_per_vertex + 1` vertices; every later vertex attaches to
/// `edges_per_vertex` distinct earlier vertices chosen with probability
/// proportional to their degree.
pub fn preferential_attachment(n: usize, edges_per_vertex: usize, seed: u64) -> Result<Graph> {
    if edges_per_vertex == 0 || n <= edges_per_vertex {
        return Err(Error::InvalidParameter(format!(
            "preferential attachment needs 0 < edges_per_vertex < n (got {edges_per_vertex}, n = {n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = edges_per_vertex + 1;
    let mut edges = Vec::with_capacity(n * edges_per_vertex);
    // each vertex appears once per incident edge endpoint
    let mut endpoints = Vec::with_capacity(2 * n * edges_per_vertex);
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(edges_per_vertex);
    for u in core..n {
        targets.clear();
        while targets.len() < edges_per_vertex {
            let v = *endpoints.choose(&mut rng).expect("non-empty core");
            if !targets.contains(&v) {
                targets.push(v);
            }
        }
        for &v in &targets {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    Graph::from_edges(n, edges)
}

/// `edges` uniformly random vertex pairs (no self-loops, parallel edges
/// allowed).
pub fn random_multigraph<R: Rng + ?Sized>(n: usize, edges: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 && edges > 0 {
        return Err(Error::InvalidParameter(
            "need at least two vertices for an edge".into(),
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    Graph::from_edges(n, pairs)
}
