mod spec;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use negw_core::cycle::{
    coverage_experiment, repetition_rng, weight_histogram, write_coverage_csv, write_histogram_csv,
    SampleSource,
};
use negw_core::graph::{load_edge_list, strongly_connected_components, write_edge_list};
use negw_core::mcmc::{run_ensemble, write_stats_csv, Schedule};
use negw_core::report::{write_params, RNG_NAME};
use negw_core::sssp::{sssp_general, write_distances_csv, SsspOutcome};
use negw_core::weights::{read_weights_csv, write_weights_csv};
use negw_core::{CheckerKind, Graph, InitStrategy, Node, Weight, WeightDomain};
use rand::SeedableRng;
use rand_pcg::Pcg64;
use rayon::prelude::*;

use spec::{parse_counts, Count, GraphSpec};

/// Sample edge weights without negative cycles, and related experiments.
#[derive(Parser, Debug)]
#[command(name = "negw", version)]
struct Cli {
    /// Worker threads for ensembles and repetitions.
    #[arg(long, global = true, env = "NEGW_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Run the sampling chain on a graph.
    Sample(SampleArgs),
    /// Runs-until-coverage experiment on the n-cycle.
    Coverage(CoverageArgs),
    /// Weight histograms of chains on the n-cycle.
    Hist(HistArgs),
    /// Single-source shortest paths for weights with negative edges.
    Sssp(SsspArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Int,
    Real,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// gnp:n=<int>,deg=<real> | dsf:n=<int>,beta=<real> | cycle:n=<int> |
    /// dpath:k=<int>, optionally followed by ,scc
    spec: GraphSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "input", required = true, multiple = false, args = ["graph", "model"])]
struct GraphSource {
    /// Edge-list file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Graph spec as for `generate`.
    #[arg(long)]
    model: Option<GraphSpec>,
}

impl GraphSource {
    fn load(&self, graph_seed: u64) -> Result<(Graph, Vec<(&'static str, String)>)> {
        if let Some(path) = &self.graph {
            let g = load_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok((g, vec![("graph", path.display().to_string())]));
        }
        let spec = self.model.as_ref().expect("clap enforces one input");
        let g = spec.generate(&mut Pcg64::seed_from_u64(graph_seed))?;
        Ok((
            g,
            vec![
                ("model", spec.to_string()),
                ("graph_seed", graph_seed.to_string()),
            ],
        ))
    }
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Seed for generating --model (defaults to --seed).
    #[arg(long, requires = "model")]
    graph_seed: Option<u64>,
    /// Weight domain `lo:hi`.
    #[arg(long, default_value = "-100:100", allow_hyphen_values = true)]
    domain: String,
    #[arg(long, value_enum, default_value_t = Mode::Real)]
    mode: Mode,
    /// Steps: a number, or a multiple of the edge count such as `100m`.
    #[arg(long, default_value = "100m")]
    steps: Count,
    #[arg(long, default_value = "bidijkstra")]
    checker: CheckerKind,
    /// Initial weights: max, zero or uniform (non-negative part of the domain).
    #[arg(long, default_value = "uniform")]
    init: InitStrategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent chains with seeds seed, seed+1, ...; file names get the
    /// chain index inserted.
    #[arg(long, default_value_t = 1)]
    chains: u64,
    /// Final weights CSV (stdout for a single chain if omitted).
    #[arg(long)]
    weights_out: Option<PathBuf>,
    /// Checkpointed statistics CSV.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CoverageArgs {
    /// Cycle length.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
    domain: String,
    /// Comma-separated chain lengths per sample, e.g. `16,48` or `2n,6n`.
    #[arg(long)]
    tau: Option<String>,
    /// Also run the exact rejection sampler as a baseline.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 20)]
    reps: u64,
    /// Give up after this many times |S| samples.
    #[arg(long, default_value_t = 10)]
    abort: u64,
    #[arg(long, default_value = "bidijkstra")]
    checker: CheckerKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HistArgs {
    /// Cycle length.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "-100:100", allow_hyphen_values = true)]
    domain: String,
    #[arg(long, value_enum, default_value_t = Mode::Int)]
    mode: Mode,
    /// Comma-separated step counts, e.g. `0,0.5n,5n,10n`.
    #[arg(long)]
    checkpoints: String,
    #[arg(long, default_value = "max")]
    init: InitStrategy,
    /// Independent chains whose counts are summed.
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Bins for real domains.
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SsspArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Weights CSV as written by `sample`.
    #[arg(long)]
    weights: PathBuf,
    /// Source node as it appears in the edge list.
    #[arg(long)]
    source: u64,
    #[arg(long, value_enum, default_value_t = Mode::Real)]
    mode: Mode,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// `dir/name.ext` -> `dir/name.<i>.ext` when several chains share a path.
fn indexed_path(path: &Path, i: u64, total: u64) -> PathBuf {
    if total == 1 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{i}"),
    };
    path.with_file_name(name)
}

fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let g = args.spec.generate(&mut Pcg64::seed_from_u64(args.seed))?;
    let sccs = strongly_connected_components(&g).count;
    let mut out = open_out(args.out.as_deref())?;
    write_params(
        &mut out,
        &[
            ("spec", args.spec.to_string()),
            ("rng", RNG_NAME.to_string()),
            ("seed", args.seed.to_string()),
        ],
    )?;
    write_edge_list(&g, &mut out)?;
    out.flush()?;
    let summary = format!("n={} m={} scc={}", g.n(), g.m(), sccs);
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn cmd_sample<W: Weight>(args: &SampleArgs) -> Result<()> {
    let domain: WeightDomain<W> = args.domain.parse()?;
    let (g, mut params) = args.source.load(args.graph_seed.unwrap_or(args.seed))?;
    let sccs = strongly_connected_components(&g).count;
    if sccs > 1 {
        eprintln!("warning: graph is not strongly connected ({sccs} components)");
    }
    if args.chains == 0 {
        bail!("--chains must be positive");
    }
    let steps = args.steps.resolve(g.n(), g.m());
    let seeds: Vec<u64> = (0..args.chains)
        .map(|i| args.seed.wrapping_add(i))
        .collect();
    let results = run_ensemble(
        &g,
        &domain,
        steps,
        args.checker,
        args.init,
        &seeds,
        &Schedule::PowersOfTwo,
        None,
    )?;

    params.extend([
        ("domain", domain.to_string()),
        ("mode", format!("{:?}", args.mode).to_lowercase()),
        ("steps", steps.to_string()),
        ("init", args.init.to_string()),
    ]);
    for (i, (w, stats)) in results.iter().enumerate() {
        let i = i as u64;
        let mut header = vec![
            ("rng", RNG_NAME.to_string()),
            ("seed", stats.seed.to_string()),
            ("checker", args.checker.to_string()),
        ];
        header.extend(params.iter().cloned());
        if let Some(p) = &args.weights_out {
            let mut out = open_out(Some(&indexed_path(p, i, args.chains)))?;
            write_params(&mut out, &header)?;
            write_weights_csv(&g, w, &mut out)?;
            out.flush()?;
        } else if args.chains == 1 {
            let mut out = open_out(None)?;
            write_params(&mut out, &header)?;
            write_weights_csv(&g, w, &mut out)?;
            out.flush()?;
        }
        if let Some(p) = &args.stats_out {
            let mut out = open_out(Some(&indexed_path(p, i, args.chains)))?;
            write_stats_csv(stats, &params, &mut out)?;
            out.flush()?;
        }
        if let Some(last) = stats.last() {
            eprintln!(
                "chain {i} seed {}: n={} m={} steps={} acc_rate={:.4} mean_weight={:.3} frac_negative={:.4}",
                stats.seed,
                g.n(),
                g.m(),
                last.steps,
                last.acc_rate,
                last.mean_weight,
                last.frac_negative
            );
        }
    }
    Ok(())
}

fn cmd_coverage(args: &CoverageArgs) -> Result<()> {
    let domain: WeightDomain<i64> = args.domain.parse()?;
    let mut sources = Vec::new();
    if let Some(t) = &args.tau {
        for c in parse_counts(t)? {
            sources.push(SampleSource::Mcmc {
                tau: c.resolve(args.n, args.n),
                checker: args.checker,
            });
        }
    }
    if args.exact {
        sources.push(SampleSource::Exact);
    }
    if sources.is_empty() {
        bail!("nothing to run: give --tau and/or --exact");
    }
    let jobs: Vec<(SampleSource, u64)> = sources
        .iter()
        .flat_map(|&s| (0..args.reps).map(move |r| (s, r)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(source, rep)| {
            // each (tau, rep) cell has its own stream, independent of the tau list
            let cell = source.tau().map_or(u64::MAX, |t| t);
            let mut rng = repetition_rng(args.seed ^ cell.rotate_left(32), rep);
            coverage_experiment(args.n, &domain, source, &mut rng, args.abort).map(|r| (rep, r))
        })
        .collect::<negw_core::Result<Vec<_>>>()?;
    let mut out = open_out(args.out.as_deref())?;
    write_coverage_csv(
        &reports,
        &[
            ("rng", RNG_NAME.to_string()),
            ("seed", args.seed.to_string()),
            ("n", args.n.to_string()),
            ("domain", domain.to_string()),
            ("reps", args.reps.to_string()),
            ("abort", args.abort.to_string()),
            ("checker", args.checker.to_string()),
        ],
        &mut out,
    )?;
    out.flush()?;
    Ok(())
}

fn cmd_hist<W: Weight>(args: &HistArgs) -> Result<()> {
    let domain: WeightDomain<W> = args.domain.parse()?;
    let checkpoints: Vec<u64> = parse_counts(&args.checkpoints)?
        .into_iter()
        .map(|c| c.resolve(args.n, args.n))
        .collect();
    let h = weight_histogram(
        args.n,
        &domain,
        &checkpoints,
        args.init,
        args.reps,
        args.bins,
        &mut Pcg64::seed_from_u64(args.seed),
    )?;
    let mut out = open_out(args.out.as_deref())?;
    write_histogram_csv(
        &h,
        &[
            ("rng", RNG_NAME.to_string()),
            ("seed", args.seed.to_string()),
            ("n", args.n.to_string()),
            ("domain", domain.to_string()),
            ("init", args.init.to_string()),
            ("reps", args.reps.to_string()),
            ("bins", h.bins.to_string()),
        ],
        &mut out,
    )?;
    out.flush()?;
    Ok(())
}

fn node_by_label(g: &Graph, label: u64) -> Result<Node> {
    let found = match g.labels() {
        Some(labels) => labels.iter().position(|&l| l == label),
        None => usize::try_from(label).ok().filter(|&x| x < g.n()),
    };
    found.with_context(|| format!("source node {label} not in graph"))
}

fn cmd_sssp<W: Weight>(args: &SsspArgs) -> Result<()> {
    let g =
        load_edge_list(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let file =
        File::open(&args.weights).with_context(|| format!("opening {}", args.weights.display()))?;
    let w = read_weights_csv::<W, _>(&g, io::BufReader::new(file))
        .with_context(|| format!("reading {}", args.weights.display()))?;
    let source = node_by_label(&g, args.source)?;
    let run = sssp_general(&g, &w, source)?;
    let mut out = open_out(args.out.as_deref())?;
    write_distances_csv(
        &g,
        &run.outcome,
        &[
            ("graph", args.graph.display().to_string()),
            ("weights", args.weights.display().to_string()),
            ("source", args.source.to_string()),
        ],
        &mut out,
    )?;
    out.flush()?;
    if run.outcome == SsspOutcome::NegativeCycleFound {
        eprintln!("negative cycle found");
    }
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring thread pool")?;
    }
    match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Sample(a) => match a.mode {
            Mode::Int => cmd_sample::<i64>(a),
            Mode::Real => cmd_sample::<f64>(a),
        },
        Command::Coverage(a) => cmd_coverage(a),
        Command::Hist(a) => match a.mode {
            Mode::Int => cmd_hist::<i64>(a),
            Mode::Real => cmd_hist::<f64>(a),
        },
        Command::Sssp(a) => match a.mode {
            Mode::Int => cmd_sssp::<i64>(a),
            Mode::Real => cmd_sssp::<f64>(a),
        },
    }
}
