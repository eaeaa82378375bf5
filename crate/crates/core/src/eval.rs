//! Experiment harness: spread/time curves, ranking similarity against a
//! reference ranking, and Cartesian parameter sweeps, all emitted as CSV.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::heuristics::{
    rank_all, select, Algorithm, GreedyEvaluator, HeuristicParams, SeedSet, Selection,
};
use crate::icm::{estimate_spread, SimConfig, SpreadEstimate};
use crate::rng::mix;

pub const REPORT_HEADER: &str = "algorithm,k,p,spread_mean,spread_stderr,select_time_s,f_k";

/// Fraction of the top-`k` of `ranking` that also appears in the top-`k`
/// of `reference`.
pub fn ranking_similarity(ranking: &[VertexId], reference: &[VertexId], k: usize) -> Result<f64> {
    for len in [ranking.len(), reference.len()] {
        if len < k {
            return Err(Error::RankingTooShort { len, k });
        }
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let top: HashSet<VertexId> = reference[..k].iter().copied().collect();
    let shared = ranking[..k].iter().filter(|v| top.contains(v)).count();
    Ok(shared as f64 / k as f64)
}

/// Runs `f` `repeats` times and returns the last result with the median
/// wall-clock time in seconds.
pub fn median_time<T, F>(repeats: usize, mut f: F) -> Result<(T, f64)>
where
    F: FnMut() -> Result<T>,
{
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut out = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let value = f()?;
        times.push(start.elapsed().as_secs_f64());
        out = Some(value);
    }
    times.sort_by(f64::total_cmp);
    Ok((out.unwrap(), times[times.len() / 2]))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub algorithm: Algorithm,
    pub k: usize,
    pub p: f64,
    pub spread: SpreadEstimate,
    /// Median selection time in seconds; `None` when timing is disabled.
    pub select_time_s: Option<f64>,
    pub f_k: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct CurveOptions {
    pub k_max: usize,
    /// Evaluate `k = 1`, every multiple of `stride`, and `k_max`.
    pub stride: usize,
    pub timing: bool,
    pub timing_repeats: usize,
}

impl CurveOptions {
    pub fn new(k_max: usize) -> Self {
        CurveOptions {
            k_max,
            stride: 1,
            timing: true,
            timing_repeats: 3,
        }
    }

    pub fn ks(&self) -> Vec<usize> {
        let stride = self.stride.max(1);
        let mut ks: Vec<usize> = std::iter::once(1)
            .chain((stride..=self.k_max).step_by(stride))
            .chain(std::iter::once(self.k_max))
            .filter(|&k| k >= 1 && k <= self.k_max)
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }
}

/// Seed for the spread estimate of a `k`-prefix. Shared across algorithms,
/// so equal prefixes get equal estimates and differences between
/// algorithms use common random numbers.
fn prefix_seed(master: u64, k: usize) -> u64 {
    mix(master, k as u64)
}

/// Spread (and optionally selection time and `F(k)`) of every evaluated
/// prefix of `algo`'s ranking.
pub fn spread_curve(
    g: &Graph,
    algo: Algorithm,
    opts: &CurveOptions,
    sel: &Selection,
    cfg: &SimConfig,
    reference: Option<&[VertexId]>,
) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    let ranking = rank_all(g, algo, opts.k_max, sel)?;
    if let Some(reference) = reference {
        if reference.len() < opts.k_max {
            return Err(Error::RankingTooShort {
                len: reference.len(),
                k: opts.k_max,
            });
        }
    }

    let mut rows = Vec::new();
    for k in opts.ks() {
        let select_time_s = if opts.timing {
            let (seeds, secs) = median_time(opts.timing_repeats, || select(g, algo, k, sel))?;
            debug_assert_eq!(&*seeds, ranking.prefix(k));
            Some(secs)
        } else {
            None
        };
        let spread = estimate_spread(
            g,
            ranking.prefix(k),
            &cfg.with_seed(prefix_seed(cfg.seed, k)),
        )?;
        let f_k = reference
            .map(|r| ranking_similarity(&ranking, r, k))
            .transpose()?;
        rows.push(ReportRow {
            algorithm: algo,
            k,
            p: sel.p,
            spread,
            select_time_s,
            f_k,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct ReportMetadata {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub cfg: SimConfig,
    pub params: HeuristicParams,
    pub reference: Option<String>,
    pub workers: usize,
    pub timestamp: u64,
}

impl ReportMetadata {
    pub fn new(
        graph: impl Into<String>,
        g: &Graph,
        cfg: SimConfig,
        params: HeuristicParams,
    ) -> Self {
        ReportMetadata {
            graph: graph.into(),
            n: g.n(),
            m: g.m(),
            cfg,
            params,
            reference: None,
            workers: rayon::current_num_threads(),
            timestamp: unix_now(),
        }
    }

    fn line(&self) -> String {
        let h = self
            .params
            .h_override
            .map_or_else(|| "auto".to_owned(), |h| h.to_string());
        format!(
            "# graph={} n={} m={} p={} replications={} seed={} alpha={} beta={} epsilon={} h={} reference={} workers={} timestamp={}",
            self.graph,
            self.n,
            self.m,
            self.cfg.p,
            self.cfg.replications,
            self.cfg.seed,
            self.params.alpha,
            self.params.beta,
            self.params.epsilon,
            h,
            self.reference.as_deref().unwrap_or("none"),
            self.workers,
            self.timestamp,
        )
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct EvaluationReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
}

impl EvaluationReport {
    /// CSV body: header plus one line per row, without metadata. Identical
    /// inputs with timing disabled give identical bytes.
    pub fn csv_body(&self) -> String {
        let mut out = String::new();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.4},{:.4},{},{}",
                row.algorithm,
                row.k,
                row.p,
                row.spread.mean,
                row.spread.std_error,
                row.select_time_s
                    .map(|t| format!("{t:.6}"))
                    .unwrap_or_default(),
                row.f_k.map(|f| format!("{f:.4}")).unwrap_or_default(),
            );
        }
        out
    }

    /// Metadata comment line followed by [`EvaluationReport::csv_body`].
    pub fn to_csv(&self) -> String {
        format!("{}\n{}", self.metadata.line(), self.csv_body())
    }
}

/// Reference ranking for `F(k)`, with the label written to the report.
#[derive(Clone, Debug)]
pub struct Reference {
    pub label: String,
    pub ranking: SeedSet,
}

/// Spread curves for several algorithms in one report, rows sorted by
/// algorithm name and then `k`.
pub fn compare(
    g: &Graph,
    graph_name: &str,
    algorithms: &[Algorithm],
    opts: &CurveOptions,
    sel: &Selection,
    cfg: &SimConfig,
    reference: Option<&Reference>,
) -> Result<EvaluationReport> {
    if algorithms.is_empty() {
        return Err(Error::InvalidParameter("no algorithms to compare".into()));
    }
    let mut metadata = ReportMetadata::new(graph_name, g, *cfg, sel.params);
    metadata.reference = reference.map(|r| r.label.clone());

    let mut rows = Vec::new();
    for &algo in algorithms {
        rows.extend(spread_curve(
            g,
            algo,
            opts,
            sel,
            cfg,
            reference.map(|r| &*r.ranking),
        )?);
    }
    rows.sort_by(|a, b| {
        a.algorithm
            .name()
            .cmp(b.algorithm.name())
            .then(a.k.cmp(&b.k))
    });
    rows.dedup_by(|a, b| a.algorithm == b.algorithm && a.k == b.k);
    Ok(EvaluationReport { metadata, rows })
}

/// Parameters a sweep can vary.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    Algorithm,
    K,
    P,
    Alpha,
    Beta,
    Epsilon,
    H,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Algorithm => "algo",
            Axis::K => "k",
            Axis::P => "p",
            Axis::Alpha => "alpha",
            Axis::Beta => "beta",
            Axis::Epsilon => "epsilon",
            Axis::H => "h",
        }
    }

    fn parse(name: &str) -> Option<Axis> {
        [
            Axis::Algorithm,
            Axis::K,
            Axis::P,
            Axis::Alpha,
            Axis::Beta,
            Axis::Epsilon,
            Axis::H,
        ]
        .into_iter()
        .find(|a| a.name() == name)
    }

    fn check_value(self, value: &str) -> std::result::Result<(), String> {
        let ok = match self {
            Axis::Algorithm => value.parse::<Algorithm>().is_ok(),
            Axis::K | Axis::H => value.parse::<usize>().is_ok(),
            Axis::P => value.parse::<f64>().is_ok_and(|p| (0.0..=1.0).contains(&p)),
            Axis::Alpha | Axis::Beta => value.parse::<f64>().is_ok_and(|x| x >= 0.0),
            Axis::Epsilon => value.parse::<f64>().is_ok_and(|x| x > 0.0),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("invalid value `{value}` for `{}`", self.name()))
        }
    }
}

/// Grid specification: one `key=v1,v2,...` line per axis. Blank lines and
/// `#` comments are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<(Axis, Vec<String>)>,
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut axes: Vec<(Axis, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (key, values) = line
                .split_once('=')
                .ok_or_else(|| parse_err("expected `key=value,...`".into()))?;
            let axis = Axis::parse(key.trim())
                .ok_or_else(|| parse_err(format!("unknown sweep key `{}`", key.trim())))?;
            if axes.iter().any(|(a, _)| *a == axis) {
                return Err(parse_err(format!("duplicate key `{}`", axis.name())));
            }
            let values: Vec<String> = values
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(str::to_owned)
                .collect();
            if values.is_empty() {
                return Err(Error::EmptyGrid);
            }
            for v in &values {
                axis.check_value(v).map_err(parse_err)?;
            }
            axes.push((axis, values));
        }
        if axes.is_empty() {
            return Err(Error::EmptyGrid);
        }
        Ok(SweepSpec { axes })
    }
}

impl SweepSpec {
    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    /// Cells in row-major order, first axis outermost.
    pub fn cells(&self) -> Vec<Vec<&str>> {
        let mut cells: Vec<Vec<&str>> = vec![Vec::new()];
        for (_, values) in &self.axes {
            cells = cells
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |v| {
                        let mut cell = prefix.clone();
                        cell.push(v.as_str());
                        cell
                    })
                })
                .collect();
        }
        cells
    }
}

/// Settings used for every axis a sweep does not vary.
#[derive(Clone, Debug)]
pub struct SweepBase {
    /// Algorithm when no `algo` axis is given; `None` picks
    /// neighbors-remove if an `h` axis is present and degree-decrease
    /// otherwise.
    pub algorithm: Option<Algorithm>,
    pub k: usize,
    pub p: f64,
    pub params: HeuristicParams,
    pub cfg: SimConfig,
    pub timing: bool,
    pub timing_repeats: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Evaluates every cell of the grid: one selection (timed) and one spread
/// estimate per cell, with the cell's own replication streams.
pub fn parameter_sweep(g: &Graph, spec: &SweepSpec, base: &SweepBase) -> Result<SweepTable> {
    if spec.cell_count() == 0 {
        return Err(Error::EmptyGrid);
    }
    let default_algo = base.algorithm.unwrap_or_else(|| {
        if spec.axes.iter().any(|(a, _)| *a == Axis::H) {
            Algorithm::NeighborsRemove
        } else {
            Algorithm::DegreeDecrease
        }
    });

    let mut columns: Vec<String> = spec.axes.iter().map(|(a, _)| a.name().to_owned()).collect();
    if !spec.axes.iter().any(|(a, _)| *a == Axis::Algorithm) {
        columns.push("algorithm".into());
    }
    columns.extend(["spread_mean", "spread_stderr", "select_time_s"].map(String::from));

    let mut rows = Vec::new();
    for (index, cell) in spec.cells().into_iter().enumerate() {
        let mut algo = default_algo;
        let mut k = base.k;
        let mut p = base.p;
        let mut params = base.params;
        for ((axis, _), value) in spec.axes.iter().zip(&cell) {
            // values were checked when the grid was parsed
            match axis {
                Axis::Algorithm => algo = value.parse()?,
                Axis::K => k = parse_num(value)?,
                Axis::P => p = parse_num(value)?,
                Axis::Alpha => params.alpha = parse_num(value)?,
                Axis::Beta => params.beta = parse_num(value)?,
                Axis::Epsilon => params.epsilon = parse_num(value)?,
                Axis::H => params.h_override = Some(parse_num(value)?),
            }
        }

        let sel = Selection::new(p, params).with_greedy(GreedyEvaluator::MonteCarlo {
            replications: base.cfg.replications,
            seed: base.cfg.seed,
        });
        let (seeds, secs) = if base.timing {
            let (s, t) = median_time(base.timing_repeats, || select(g, algo, k, &sel))?;
            (s, Some(t))
        } else {
            (select(g, algo, k, &sel)?, None)
        };
        let cfg = SimConfig::new(p, base.cfg.replications, mix(base.cfg.seed, index as u64))?;
        let spread = estimate_spread(g, &seeds, &cfg)?;

        let mut row: Vec<String> = cell.iter().map(|v| (*v).to_owned()).collect();
        if !spec.axes.iter().any(|(a, _)| *a == Axis::Algorithm) {
            row.push(algo.name().to_owned());
        }
        row.push(format!("{:.4}", spread.mean));
        row.push(format!("{:.4}", spread.std_error));
        row.push(secs.map(|t| format!("{t:.6}")).unwrap_or_default());
        rows.push(row);
    }
    Ok(SweepTable { columns, rows })
}

fn parse_num<T: FromStr>(value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse `{value}`")))
}
