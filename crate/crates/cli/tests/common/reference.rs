//! Naive reference selections written directly from the pseudocode, over a
//! plain edge list. Everything is linear scans and dense matrices so the
//! code has nothing in common with the library's CSR and lazy queues.

use std::collections::VecDeque;

pub struct RefGraph {
    pub n: usize,
    /// `mult[u][v]` parallel edges between u and v (self-loops dropped)
    pub mult: Vec<Vec<u32>>,
    pub edges: Vec<(usize, usize)>,
}

impl RefGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut mult = vec![vec![0u32; n]; n];
        let mut kept = Vec::new();
        for &(u, v) in edges {
            if u != v {
                mult[u][v] += 1;
                mult[v][u] += 1;
                kept.push((u, v));
            }
        }
        RefGraph {
            n,
            mult,
            edges: kept,
        }
    }

    pub fn degree(&self, u: usize) -> u64 {
        self.mult[u].iter().map(|&c| u64::from(c)).sum()
    }

    fn neighbours(&self, u: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.n)
            .filter(move |&w| self.mult[u][w] > 0)
            .map(move |w| (w, self.mult[u][w]))
    }

    /// Vertices within `h` hops of `u`, `u` included.
    pub fn ball(&self, u: usize, h: u32) -> Vec<bool> {
        let mut dist = vec![u32::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            if dist[v] == h {
                continue;
            }
            for (w, _) in self.neighbours(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist.iter().map(|&d| d != u32::MAX).collect()
    }
}

/// Index of the largest score among allowed vertices; first index wins ties.
fn argmax<T: PartialOrd + Copy>(scores: &[T], allowed: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in 0..scores.len() {
        if !allowed(v) {
            continue;
        }
        match best {
            Some(b) if scores[v] <= scores[b] => {}
            _ => best = Some(v),
        }
    }
    best
}

pub fn max_degree(g: &RefGraph, k: usize) -> Vec<usize> {
    let deg: Vec<u64> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut chosen = vec![false; g.n];
    let mut seeds = Vec::new();
    while seeds.len() < k {
        let u = argmax(&deg, |v| !chosen[v]).unwrap();
        chosen[u] = true;
        seeds.push(u);
    }
    seeds
}

pub fn neighbors_remove(g: &RefGraph, k: usize, h: u32) -> Vec<usize> {
    let deg: Vec<u64> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut candidate = vec![true; g.n];
    let mut chosen = vec![false; g.n];
    let mut seeds = Vec::new();
    while seeds.len() < k {
        let u = argmax(&deg, |v| candidate[v])
            .or_else(|| argmax(&deg, |v| !chosen[v]))
            .unwrap();
        chosen[u] = true;
        seeds.push(u);
        for (v, inside) in g.ball(u, h).into_iter().enumerate() {
            if inside {
                candidate[v] = false;
            }
        }
    }
    seeds
}

pub fn single_discount(g: &RefGraph, k: usize) -> Vec<usize> {
    let mut score: Vec<i64> = (0..g.n).map(|v| g.degree(v) as i64).collect();
    let mut chosen = vec![false; g.n];
    let mut seeds = Vec::new();
    while seeds.len() < k {
        let u = argmax(&score, |v| !chosen[v]).unwrap();
        chosen[u] = true;
        seeds.push(u);
        for &(a, b) in &g.edges {
            if a == u {
                score[b] -= 1;
            } else if b == u {
                score[a] -= 1;
            }
        }
    }
    seeds
}

pub fn degree_discount(g: &RefGraph, k: usize, p: f64) -> Vec<usize> {
    let mut t = vec![0u64; g.n];
    let mut chosen = vec![false; g.n];
    let mut seeds = Vec::new();
    while seeds.len() < k {
        let dd: Vec<f64> = (0..g.n)
            .map(|v| {
                let (d, t) = (g.degree(v) as f64, t[v] as f64);
                d - 2.0 * t - (d - t) * t * p
            })
            .collect();
        let u = argmax(&dd, |v| !chosen[v]).unwrap();
        chosen[u] = true;
        seeds.push(u);
        for (t, &c) in t.iter_mut().zip(&g.mult[u]) {
            *t += u64::from(c);
        }
    }
    seeds
}

pub fn degree_decrease(
    g: &RefGraph,
    k: usize,
    p: f64,
    alpha: f64,
    beta: f64,
    epsilon: f64,
) -> Vec<usize> {
    let f = beta * p;
    let mut priority: Vec<f64> = (0..g.n).map(|v| g.degree(v) as f64).collect();
    let mut in_v = vec![true; g.n];
    let mut seeds = Vec::new();
    while seeds.len() < k {
        let u = argmax(&priority, |v| in_v[v]).unwrap();
        in_v[u] = false;
        seeds.push(u);

        let mut dd = vec![0.0; g.n];
        let mut visited = vec![false; g.n];
        dd[u] = alpha;
        visited[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            if dd[v] <= epsilon {
                continue;
            }
            for (w, c) in g.neighbours(v) {
                if in_v[w] && !visited[w] {
                    visited[w] = true;
                    dd[w] = dd[v] * f64::from(c) * f;
                    priority[w] -= dd[w];
                    queue.push_back(w);
                }
            }
        }
    }
    seeds
}

/// Expected reachable-set size from `seeds`, summed over every live-edge
/// outcome of every individual edge.
pub fn exact_spread(g: &RefGraph, seeds: &[usize], p: f64) -> f64 {
    let m = g.edges.len();
    assert!(m <= 20, "reference enumeration is for tiny graphs");
    let mut total = 0.0;
    for mask in 0u32..1 << m {
        let live = mask.count_ones() as i32;
        let weight = p.powi(live) * (1.0 - p).powi(m as i32 - live);
        let mut reached = vec![false; g.n];
        let mut stack = seeds.to_vec();
        for &s in seeds {
            reached[s] = true;
        }
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in g.edges.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        total += weight * reached.iter().filter(|&&r| r).count() as f64;
    }
    total
}

/// Plain greedy: every round evaluates the marginal gain of every remaining
/// vertex. Gains within 1e-9 count as equal and go to the lowest id.
pub fn exhaustive_greedy(g: &RefGraph, k: usize, p: f64) -> Vec<usize> {
    let mut seeds: Vec<usize> = Vec::new();
    let mut base = 0.0;
    while seeds.len() < k {
        let mut best: Option<(usize, f64, f64)> = None;
        for v in (0..g.n).filter(|v| !seeds.contains(v)) {
            let mut trial = seeds.clone();
            trial.push(v);
            let spread = exact_spread(g, &trial, p);
            let gain = spread - base;
            match best {
                Some((_, best_gain, _)) if gain <= best_gain + 1e-9 => {}
                _ => best = Some((v, gain, spread)),
            }
        }
        let (v, _, spread) = best.unwrap();
        seeds.push(v);
        base = spread;
    }
    seeds
}
