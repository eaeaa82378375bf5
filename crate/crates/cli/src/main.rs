use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;

use influmax::eval::{
    compare, median_time, parameter_sweep, CurveOptions, Reference, SweepBase, SweepSpec,
};
use influmax::graph::{load_edge_list, Format, LoadOptions};
use influmax::heuristics::{rank_all, select, GreedyEvaluator, Selection};
use influmax::icm::estimate_spread;
use influmax::{Algorithm, Error, Graph, HeuristicParams, SeedSet, SimConfig};

/// Degree-based influence maximization under the independent cascade model.
#[derive(Parser, Debug)]
#[command(name = "influmax", version, about)]
struct Cli {
    /// Worker threads for spread estimation (default: all cores)
    #[arg(long, global = true, env = "INFLUMAX_WORKERS")]
    workers: Option<usize>,

    /// Write output here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Select seeds and print their labels in selection order
    Select(SelectArgs),
    /// Estimate the spread of a seed file
    Evaluate(EvaluateArgs),
    /// Spread/time curves of several algorithms as CSV
    Compare(CompareArgs),
    /// Evaluate a parameter grid as CSV
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge-list file
    #[arg(long)]
    graph: PathBuf,

    /// plain, header, snap or auto
    #[arg(long, default_value = "auto")]
    format: Format,

    /// Collapse parallel edges (default: on for snap, off otherwise)
    #[arg(long, overrides_with = "no_dedup")]
    dedup: bool,

    #[arg(long, overrides_with = "dedup")]
    no_dedup: bool,
}

impl GraphArgs {
    fn load(&self) -> Result<Graph> {
        let file = File::open(&self.graph)
            .with_context(|| format!("cannot open {}", self.graph.display()))?;
        let dedup = match (self.dedup, self.no_dedup) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        let loaded = load_edge_list(
            BufReader::new(file),
            LoadOptions {
                format: self.format,
                dedup,
            },
        )
        .with_context(|| format!("cannot load {}", self.graph.display()))?;
        info!(
            "loaded {} as {:?}: n={} m={}",
            self.graph.display(),
            loaded.format,
            loaded.graph.n(),
            loaded.graph.m()
        );
        Ok(loaded.graph)
    }

    fn name(&self) -> String {
        self.graph
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".into())
    }
}

#[derive(Args, Debug)]
struct SimArgs {
    /// Activation probability per edge
    #[arg(long, default_value_t = 0.01)]
    p: f64,

    /// Monte-Carlo replications per estimate
    #[arg(long, short = 'R', default_value_t = 10_000)]
    replications: usize,

    /// Master RNG seed (random and printed when omitted)
    #[arg(long)]
    seed: Option<u64>,
}

impl SimArgs {
    fn config(&self) -> Result<SimConfig> {
        let seed = self.seed.unwrap_or_else(|| {
            let seed = rand::random();
            eprintln!("seed: {seed}");
            seed
        });
        Ok(SimConfig::new(self.p, self.replications, seed)?)
    }
}

#[derive(Args, Debug)]
struct HeuristicArgs {
    /// Reduction a degree-decrease seed passes to its neighbours
    #[arg(long, default_value_t = 50.0)]
    alpha: f64,

    /// Degree-decrease reduction factor per hop is beta * p
    #[arg(long, default_value_t = 10.0)]
    beta: f64,

    /// Degree-decrease stops propagating reductions at or below this
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,

    /// Hop radius for neighbors-remove (default: round(12 * sqrt(p)))
    #[arg(long)]
    h: Option<u32>,
}

impl HeuristicArgs {
    fn params(&self) -> Result<HeuristicParams> {
        let params = HeuristicParams {
            alpha: self.alpha,
            beta: self.beta,
            epsilon: self.epsilon,
            h_override: self.h,
            ..Default::default()
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args, Debug)]
struct SelectArgs {
    #[command(flatten)]
    graph: GraphArgs,

    #[arg(long, default_value = "degree-decrease")]
    algo: Algorithm,

    #[arg(long, default_value_t = 50)]
    k: usize,

    #[command(flatten)]
    sim: SimArgs,

    #[command(flatten)]
    heuristic: HeuristicArgs,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// File with one seed label per line; `#` lines are ignored
    #[arg(long)]
    seeds: PathBuf,

    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Algorithms to compare
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "max-degree,single-discount,degree-discount,neighbors-remove,degree-decrease"
    )]
    algos: Vec<Algorithm>,

    /// Largest seed-set size
    #[arg(long, default_value_t = 50)]
    k: usize,

    /// Evaluate k = 1, multiples of the stride, and k
    #[arg(long, default_value_t = 1)]
    stride: usize,

    /// Reference ranking for F(k), e.g. greedy-celf
    #[arg(long)]
    reference: Option<Algorithm>,

    /// Replications per evaluation of a greedy-celf reference (default: --replications)
    #[arg(long)]
    reference_replications: Option<usize>,

    /// Leave select_time_s empty instead of timing each selection
    #[arg(long)]
    no_timing: bool,

    #[command(flatten)]
    sim: SimArgs,

    #[command(flatten)]
    heuristic: HeuristicArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,

    /// Grid file with `key=v1,v2,...` lines (keys: algo, k, p, alpha, beta, epsilon, h)
    #[arg(long)]
    spec: PathBuf,

    /// Algorithm for grids without an `algo` line
    #[arg(long)]
    algo: Option<Algorithm>,

    #[arg(long, default_value_t = 50)]
    k: usize,

    #[arg(long)]
    no_timing: bool,

    #[command(flatten)]
    sim: SimArgs,

    #[command(flatten)]
    heuristic: HeuristicArgs,
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            bail!("--workers must be at least 1");
        }
        builder = builder.num_threads(workers);
    }
    let pool = builder.build()?;
    let text = pool.install(|| match &cli.command {
        Command::Select(args) => cmd_select(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
    })?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_select(args: &SelectArgs) -> Result<String> {
    let g = args.graph.load()?;
    let params = args.heuristic.params()?;
    let cfg = if args.algo == Algorithm::GreedyCelf {
        args.sim.config()?
    } else {
        SimConfig::new(
            args.sim.p,
            args.sim.replications,
            args.sim.seed.unwrap_or(0),
        )?
    };
    let sel = Selection::new(cfg.p, params).with_greedy(GreedyEvaluator::MonteCarlo {
        replications: cfg.replications,
        seed: cfg.seed,
    });
    let (seeds, secs) = median_time(1, || select(&g, args.algo, args.k, &sel))?;

    let mut out = String::new();
    for &v in seeds.iter() {
        out.push_str(&format!("{}\n", g.label(v)));
    }
    let h = match args.algo {
        Algorithm::NeighborsRemove => format!(
            " h={}",
            params
                .h_override
                .unwrap_or_else(|| influmax::heuristics::compute_h(cfg.p))
        ),
        _ => String::new(),
    };
    out.push_str(&format!(
        "# algorithm={} k={} p={}{} select_time_s={:.6}\n",
        args.algo, args.k, cfg.p, h, secs
    ));
    Ok(out)
}

/// Parses a seed file of original labels, skipping blank and `#` lines.
fn read_seed_file(g: &Graph, path: &Path) -> Result<SeedSet> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut seeds = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vertex = line
            .parse::<u64>()
            .ok()
            .and_then(|label| g.vertex_by_label(label))
            .ok_or_else(|| Error::UnknownLabel(line.to_owned()))?;
        seeds.push(vertex);
    }
    Ok(SeedSet::new(g, seeds)?)
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<String> {
    let g = args.graph.load()?;
    let seeds = read_seed_file(&g, &args.seeds)?;
    let cfg = args.sim.config()?;
    let est = estimate_spread(&g, &seeds, &cfg)?;
    Ok(format!(
        "spread_mean,spread_stderr,replications\n{:.4},{:.4},{}\n",
        est.mean, est.std_error, est.replications
    ))
}

fn cmd_compare(args: &CompareArgs) -> Result<String> {
    let g = args.graph.load()?;
    let cfg = args.sim.config()?;
    let params = args.heuristic.params()?;
    let sel = Selection::new(cfg.p, params).with_greedy(GreedyEvaluator::MonteCarlo {
        replications: cfg.replications,
        seed: cfg.seed,
    });
    let opts = CurveOptions {
        stride: args.stride,
        timing: !args.no_timing,
        ..CurveOptions::new(args.k)
    };

    let reference = match args.reference {
        Some(algo) => {
            let replications = args.reference_replications.unwrap_or(cfg.replications);
            let ref_sel = sel.with_greedy(GreedyEvaluator::MonteCarlo {
                replications,
                seed: cfg.seed,
            });
            let ranking = rank_all(&g, algo, args.k, &ref_sel)?;
            let label = match algo {
                Algorithm::GreedyCelf => format!("{algo}(R={replications})"),
                _ => algo.to_string(),
            };
            Some(Reference { label, ranking })
        }
        None => None,
    };

    let report = compare(
        &g,
        &args.graph.name(),
        &args.algos,
        &opts,
        &sel,
        &cfg,
        reference.as_ref(),
    )?;
    Ok(report.to_csv())
}

fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    let g = args.graph.load()?;
    let text = std::fs::read_to_string(&args.spec)
        .with_context(|| format!("cannot read {}", args.spec.display()))?;
    let spec: SweepSpec = text
        .parse()
        .with_context(|| format!("invalid sweep spec {}", args.spec.display()))?;
    let cfg = args.sim.config()?;
    let base = SweepBase {
        algorithm: args.algo,
        k: args.k,
        p: cfg.p,
        params: args.heuristic.params()?,
        cfg,
        timing: !args.no_timing,
        timing_repeats: 3,
    };
    Ok(parameter_sweep(&g, &spec, &base)?.to_csv())
}
