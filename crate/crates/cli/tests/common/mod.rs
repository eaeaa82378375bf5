#![allow(dead_code)]

pub mod reference;

use std::path::Path;
use std::process::{Command, Output};

use rand::Rng;

use influmax::{Graph, SeedSet};

/// `m` random vertex pairs on `0..n`, no self-loops.
pub fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            (u, v)
        })
        .collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

pub fn ids(seeds: &SeedSet) -> Vec<usize> {
    seeds.iter().map(|v| v.index()).collect()
}

pub fn influmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_influmax"))
        .args(args)
        .env_remove("INFLUMAX_WORKERS")
        .output()
        .expect("binary runs")
}

pub fn stdout_of(args: &[&str]) -> String {
    let out = influmax(args);
    assert!(
        out.status.success(),
        "influmax {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Seed labels printed by `select`, summary line dropped.
pub fn labels(select_output: &str) -> Vec<String> {
    select_output
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}
