//! Monte-Carlo estimator checks against the exact oracle, determinism
//! across worker counts, and statistical properties of the harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use influmax::eval::{median_time, spread_curve, CurveOptions};
use influmax::generators::{preferential_attachment, random_multigraph};
use influmax::heuristics::{degree_decrease, Selection};
use influmax::icm::{estimate_spread, exact_spread};
use influmax::{Algorithm, Graph, HeuristicParams, SimConfig, VertexId};

fn v(i: usize) -> VertexId {
    VertexId::new(i)
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn path_estimate_matches_exact_value() {
    let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let exact = exact_spread(&path, &[v(0)], 0.5).unwrap();
    assert!((exact - 1.75).abs() < 1e-12);
    let est = estimate_spread(&path, &[v(0)], &SimConfig::new(0.5, 100_000, 11).unwrap()).unwrap();
    assert!(
        (est.mean - exact).abs() <= 3.0 * est.std_error,
        "{est:?} vs {exact}"
    );
}

#[test]
fn triangle_estimate_matches_exact_value() {
    let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let exact = exact_spread(&triangle, &[v(0)], 0.5).unwrap();
    let est = estimate_spread(
        &triangle,
        &[v(0)],
        &SimConfig::new(0.5, 100_000, 5).unwrap(),
    )
    .unwrap();
    assert!((est.mean - exact).abs() <= 4.0 * est.std_error);
}

#[test]
fn estimates_agree_with_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 40;
    let mut agree = 0;
    for trial in 0..trials {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(1..=18);
        let g = random_multigraph(n, m, &mut rng).unwrap();
        let size = rng.gen_range(1..=n.min(3));
        let mut all: Vec<VertexId> = g.vertices().collect();
        all.sort_by_key(|_| rng.gen::<u32>());
        let seeds = &all[..size];
        let p = [0.1, 0.3, 0.5][trial % 3];
        let exact = exact_spread(&g, seeds, p).unwrap();
        let est =
            estimate_spread(&g, seeds, &SimConfig::new(p, 20_000, trial as u64).unwrap()).unwrap();
        if (est.mean - exact).abs() <= 4.0 * est.std_error.max(1e-12) {
            agree += 1;
        }
    }
    assert!(agree >= trials - 1, "{agree}/{trials}");
}

#[test]
fn estimates_are_identical_across_worker_counts() {
    let g = preferential_attachment(500, 3, 4).unwrap();
    let seeds = [v(0), v(7), v(42)];
    let cfg = SimConfig::new(0.05, 3_000, 77).unwrap();
    let one = in_pool(1, || estimate_spread(&g, &seeds, &cfg).unwrap());
    let many = in_pool(6, || estimate_spread(&g, &seeds, &cfg).unwrap());
    assert_eq!(one.mean.to_bits(), many.mean.to_bits());
    assert_eq!(one.std_error.to_bits(), many.std_error.to_bits());
    assert_ne!(
        estimate_spread(&g, &seeds, &cfg.with_seed(78)).unwrap(),
        one,
        "different seeds should give different streams"
    );
}

#[test]
fn doubling_replications_shrinks_error_by_root_two() {
    let g = preferential_attachment(400, 2, 8).unwrap();
    let seeds = [v(0), v(1)];
    let small = estimate_spread(&g, &seeds, &SimConfig::new(0.1, 20_000, 1).unwrap()).unwrap();
    let large = estimate_spread(&g, &seeds, &SimConfig::new(0.1, 40_000, 1).unwrap()).unwrap();
    let ratio = large.std_error / small.std_error;
    assert!(
        (ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 0.05,
        "ratio {ratio}"
    );
}

#[test]
fn spread_grows_with_k() {
    let g = preferential_attachment(1_000, 3, 21).unwrap();
    let sel = Selection::new(0.05, HeuristicParams::default());
    let cfg = SimConfig::new(0.05, 2_000, 3).unwrap();
    let opts = CurveOptions {
        stride: 5,
        timing: false,
        ..CurveOptions::new(10)
    };
    for algo in Algorithm::HEURISTICS {
        let rows = spread_curve(&g, algo, &opts, &sel, &cfg, None).unwrap();
        let at = |k: usize| rows.iter().find(|r| r.k == k).unwrap().spread;
        let (s5, s10) = (at(5), at(10));
        let combined = (s5.std_error.powi(2) + s10.std_error.powi(2)).sqrt();
        assert!(
            s10.mean >= s5.mean - 2.0 * combined,
            "{algo}: {s5:?} {s10:?}"
        );
        assert!(rows
            .iter()
            .all(|r| r.spread.mean >= r.k as f64 && r.spread.mean <= 1_000.0));
    }
}

#[test]
fn larger_threshold_means_less_work() {
    // at p = 0.01 the reduction shrinks tenfold per hop, so a tiny threshold
    // walks most of the graph every round while 100 > alpha never expands
    let g = preferential_attachment(20_000, 3, 5).unwrap();
    let time_for = |epsilon: f64| {
        let params = HeuristicParams {
            epsilon,
            ..Default::default()
        };
        median_time(5, || degree_decrease(&g, 50, 0.01, &params))
            .unwrap()
            .1
    };
    let slow = time_for(0.001);
    let fast = time_for(100.0);
    assert!(
        fast < slow,
        "epsilon=100 took {fast}s, epsilon=0.001 took {slow}s"
    );
}
