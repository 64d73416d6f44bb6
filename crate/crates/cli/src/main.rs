// SPDX-License-Identifier: Apache-2.0

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use bcpar::bench::{emit_csv, parse_csv, plot_data, sweep, StrategyRunner, SweepSpec, WallTimer};
use bcpar::generator::RNG_ALGORITHM;
use bcpar::graph::{load_edge_list, write_edge_list, GraphInputs};
use bcpar::memory::{self, Algorithm};
use bcpar::{
    generate_ba_directed, run_strategy, verify_graph, BaParams, PredVariant, Strategy, StrategyConfig, VerifyOptions,
};

mod format;

use format::{grouped, sig9};

#[derive(Parser, Debug)]
#[command(name = "bcpar", version, about = "Parallel betweenness centrality for directed graphs")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Upper bound on worker threads for any strategy
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Skip benchmark settings whose modeled footprint exceeds this many bytes
    #[arg(long, global = true, value_name = "BYTES")]
    memory_cap: Option<u128>,
    /// Suppress progress and summary output
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a directed Barabási–Albert graph
    Generate {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute betweenness centrality of every vertex
    Bc {
        #[arg(long, default_value = "seq")]
        strategy: Strategy,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Output file; standard output if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check strategies against the sequential and brute-force oracles
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "seq,vertex,edge,shared")]
        strategies: Vec<Strategy>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = StrategyConfig::DEFAULT_CHUNK)]
        chunk: usize,
        /// Predecessor layouts checked for the work-shared strategy
        #[arg(long, value_delimiter = ',', default_value = "byte,bit")]
        pred: Vec<PredVariant>,
        #[arg(long, hide = true)]
        corrupt_scores: bool,
    },
    /// Modeled device-memory footprint and the largest feasible graph
    Mem {
        #[arg(long)]
        algo: Algorithm,
        #[arg(long)]
        nodes: u64,
        /// Arcs per vertex; the arc count is ceil(density * nodes)
        #[arg(long)]
        density: f64,
        #[arg(long, value_name = "BYTES")]
        budget: Option<u128>,
    },
    /// Run a benchmark sweep and write CSV results
    Bench {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Turn benchmark CSV into gnuplot data files
    Plotdata {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "shared")]
        baseline: Strategy,
    },
}

#[derive(Args, Debug)]
struct Tuning {
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = StrategyConfig::DEFAULT_CHUNK)]
    chunk: usize,
    #[arg(long, default_value = "byte")]
    pred: PredVariant,
}

impl Global {
    fn workers(&self, requested: Option<usize>) -> usize {
        let w = requested.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()));
        match self.threads {
            Some(cap) => w.min(cap as usize),
            None => w,
        }
    }

    fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::Generate { nodes, beta, seed, out } => {
            let graph = generate_ba_directed(BaParams::new(nodes, beta, seed))?;
            let mut text =
                format!("# ba-directed nodes={nodes} beta={beta} seed={seed} rng={RNG_ALGORITHM}\n").into_bytes();
            write_edge_list(&graph, &mut text)?;
            emit(out.as_deref(), &text)?;
            g.note(format!(
                "{} vertices, {} arcs, density {:.4}",
                graph.num_vertices(),
                graph.num_arcs(),
                graph.edge_density()?
            ));
        }
        Command::Bc { strategy, tuning, input, out } => {
            let inputs = load(&input)?;
            let workers = if strategy == Strategy::Sequential { 1 } else { g.workers(tuning.workers) };
            let cfg = StrategyConfig::new(strategy, workers).with_chunk(tuning.chunk).with_pred(tuning.pred);
            let run = run_strategy(&inputs, &cfg, false)?;
            let mut text = String::new();
            for (v, x) in run.scores.as_slice().iter().enumerate() {
                text.push_str(&format!("{v} {}\n", sig9(*x)));
            }
            text.push_str(&format!("# sum {}\n", sig9(run.scores.checksum())));
            emit(out.as_deref(), text.as_bytes())?;
            let c = run.counters;
            g.note(format!(
                "{}: levels {}, atomic ops {}, max task {}",
                cfg.label(),
                c.levels,
                c.atomic_ops,
                c.max_task_len
            ));
        }
        Command::Verify { input, strategies, workers, chunk, pred, corrupt_scores } => {
            let inputs = load(&input)?;
            let workers = g.workers(workers);
            let mut configs = Vec::new();
            for s in strategies {
                match s {
                    Strategy::Sequential => configs.push(StrategyConfig::new(s, 1)),
                    Strategy::WorkShared => configs
                        .extend(pred.iter().map(|&p| StrategyConfig::new(s, workers).with_chunk(chunk).with_pred(p))),
                    _ => configs.push(StrategyConfig::new(s, workers).with_chunk(chunk)),
                }
            }
            let opts = VerifyOptions { corrupt_scores, ..Default::default() };
            let report = verify_graph(&inputs, &configs, &opts)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Mem { algo, nodes, density, budget } => {
            if !density.is_finite() || density < 0.0 {
                bail!("density must be finite and non-negative");
            }
            let m = memory::arcs_for_density(density, nodes);
            let f = algo.footprint(nodes, m)?;
            println!("{algo}: n = {}, m = {}", grouped(nodes.into()), grouped(m.into()));
            for (name, bytes) in f.parts() {
                println!("  {name:<12} {:>20} bytes", grouped(bytes));
            }
            println!("  {:<12} {:>20} bytes", "total", grouped(f.total_bytes));
            println!(
                "  {:.3} GB ({:.3} GiB, {:.2} MiB)",
                memory::to_gb(f.total_bytes),
                memory::to_gib(f.total_bytes),
                memory::to_mib(f.total_bytes)
            );
            if let Some(budget) = budget {
                let fits = f.total_bytes <= budget;
                let max_n = memory::max_feasible_nodes(algo, density, budget)?;
                println!(
                    "budget {} bytes ({:.3} GB, {:.3} GiB): {}",
                    grouped(budget),
                    memory::to_gb(budget),
                    memory::to_gib(budget),
                    if fits { "fits" } else { "does not fit" }
                );
                println!("largest n within budget at density {density}: {}", grouped(max_n.into()));
            }
        }
        Command::Bench { spec, out } => {
            let text = fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let mut spec: SweepSpec = text.parse().with_context(|| format!("parsing {}", spec.display()))?;
            spec.workers = g.workers(Some(spec.workers));
            if g.memory_cap.is_some() {
                spec.memory_cap = g.memory_cap;
            }
            let mut progress = |r: &bcpar::bench::BenchRecord| {
                g.note(format!(
                    "n={} m={} {} {:?} mean {:.3} ms",
                    r.graph.n,
                    r.graph.m,
                    r.label(),
                    r.status,
                    r.mean_ms
                ));
            };
            let records = sweep(&spec, &StrategyRunner, &mut WallTimer, &mut progress)?;
            write_atomic(&out, emit_csv(&records).as_bytes())?;
            g.note(format!("{} records written to {} (graphs from rng {RNG_ALGORITHM})", records.len(), out.display()));
        }
        Command::Plotdata { input, out_dir, baseline } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let rows = parse_csv(&text).with_context(|| format!("parsing {}", input.display()))?;
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            let data = plot_data(&rows, baseline);
            for (name, contents) in data.files() {
                write_atomic(&out_dir.join(name), contents.as_bytes())?;
            }
            g.note(format!("plot data written to {}", out_dir.display()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load(path: &Path) -> anyhow::Result<GraphInputs> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let edges = load_edge_list(BufReader::new(file)).with_context(|| format!("loading {}", path.display()))?;
    Ok(GraphInputs::new(edges))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

/// Writes to a temporary file next to `path` and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating temp file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
