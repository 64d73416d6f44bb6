// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and exits
//! non-zero if any criterion fails or exceeds its time limit.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bcpar::bench::{
    emit_csv, parse_csv, plot_data, run_bench, sweep, BenchOptions, BenchRow, GraphDescriptor, RunStatus, Runner,
    SpeedupTable, StrategyRunner, SweepSpec, WallTimer,
};
use bcpar::brandes::{bc_bruteforce, bc_sequential, bfs_forward};
use bcpar::graph::{degree_stats, validate, Finding, GraphInputs};
use bcpar::memory::{footprint_jia, footprint_shi, footprint_sriram, max_feasible_nodes, to_mib, Algorithm};
use bcpar::strategy::PredecessorMatrix;
use bcpar::{generate_ba_directed, run_strategy, BaParams, BcRun, PredVariant, Strategy, StrategyConfig};

type Verdict = Result<String, String>;
/// Distances and path counts from each source.
type Paths = Vec<(Vec<i32>, Vec<u64>)>;
/// Id, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn ba(n: usize, beta: usize, seed: u64) -> GraphInputs {
    GraphInputs::new(generate_ba_directed(BaParams::new(n, beta, seed)).expect("valid parameters"))
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e11);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = rng.random_range(4..=16);
        let beta = rng.random_range(1..n);
        let seed = rng.random();
        let g = ba(n, beta, seed);
        let seq = bc_sequential(&g.csr).map_err(|e| e.to_string())?;
        let brute = bc_bruteforce(&g.csr).map_err(|e| e.to_string())?;
        let err = seq.max_relative_error(&brute);
        ensure!(err <= 1e-9, "graph {i} (n={n}, beta={beta}, seed={seed}): relative error {err:e}");
        worst = worst.max(err);
    }
    Ok(format!("200 graphs, max relative error {worst:.2e}"))
}

/// Forward-pass distances and path counts from every source.
fn expected_paths(g: &GraphInputs) -> Result<Paths, String> {
    (0..g.num_vertices())
        .map(|s| bfs_forward(&g.csr, s).map(|ws| (ws.dist, ws.sigma)).map_err(|e| e.to_string()))
        .collect()
}

/// Number of sources whose traced distances or path counts differ from `expected`.
fn trace_mismatches(expected: &Paths, run: &BcRun) -> Result<usize, String> {
    let traces = run.trace.as_ref().ok_or("no trace recorded")?;
    ensure!(traces.len() == expected.len(), "{} traces for {} sources", traces.len(), expected.len());
    Ok(expected.iter().zip(traces).filter(|((dist, sigma), t)| *dist != t.dist || *sigma != t.sigma).count())
}

fn strategy_correctness() -> Verdict {
    const BETAS: [usize; 4] = [1, 2, 5, 10];
    const WORKERS: [usize; 4] = [1, 2, 4, 8];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c0e);
    let mut worst = [0.0f64; 4];
    let mut covered = HashSet::new();
    for i in 0..50 {
        let n = rng.random_range(100..=2000);
        let beta = BETAS[i % 4];
        let g = ba(n, beta, rng.random());
        let oracle = bc_sequential(&g.csr).map_err(|e| e.to_string())?;
        let expected = expected_paths(&g)?;
        let configs = [
            StrategyConfig::new(Strategy::VertexParallel, 1),
            StrategyConfig::new(Strategy::EdgeParallel, 1),
            StrategyConfig::new(Strategy::WorkShared, 1).with_pred(PredVariant::Byte),
            StrategyConfig::new(Strategy::WorkShared, 1).with_pred(PredVariant::Bit),
        ];
        for (k, cfg) in configs.into_iter().enumerate() {
            // every strategy meets every worker count and every beta within 16 graphs
            let cfg = StrategyConfig { workers: WORKERS[(i / 4 + k) % 4], ..cfg };
            covered.insert((k, beta, cfg.workers));
            let run = run_strategy(&g, &cfg, true).map_err(|e| format!("{}: {e}", cfg.label()))?;
            let bad = trace_mismatches(&expected, &run)?;
            ensure!(bad == 0, "graph {i} (n={n}, beta={beta}) {}: {bad} sources with wrong dist/sigma", cfg.label());
            let err = run.scores.max_relative_error(&oracle);
            let tol = cfg.strategy.tolerance();
            ensure!(err <= tol, "graph {i} (n={n}, beta={beta}) {}: relative error {err:e} > {tol:e}", cfg.label());
            worst[k] = worst[k].max(err);
        }
    }
    ensure!(covered.len() == 4 * 16, "only {} of 64 strategy/beta/worker combinations ran", covered.len());
    Ok(format!(
        "50 graphs, sigma/dist exact, max relative error vertex {:.1e}, edge {:.1e}, shared byte {:.1e}, shared bit {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

fn shi_footprint() -> Verdict {
    let f = footprint_shi(20_000, 2_000_000).map_err(|e| e.to_string())?;
    ensure!(f.total_bytes == 416_320_000, "total {} bytes", f.total_bytes);
    let mib = to_mib(f.total_bytes);
    ensure!((mib - 397.0).abs() <= 1.0, "{mib:.2} MiB is not within 1 of 397");
    Ok(format!("{} bytes = {mib:.2} MiB", f.total_bytes))
}

fn jia_feasibility() -> Verdict {
    let n = max_feasible_nodes(Algorithm::Jia, 2.0, 3 << 30).map_err(|e| e.to_string())?;
    ensure!(n < 15_000, "largest feasible n is {n}");
    ensure!(n == 14_188, "largest feasible n is {n}, expected 14188");
    Ok(format!("largest feasible n = {n}"))
}

fn generator_counts() -> Verdict {
    let g = generate_ba_directed(BaParams::new(5000, 5, 1)).map_err(|e| e.to_string())?;
    ensure!(g.num_arcs() == 49_950, "{} arcs", g.num_arcs());
    let arcs: HashSet<(u32, u32)> = g.arcs().collect();
    ensure!(arcs.len() == g.num_arcs(), "duplicate arcs");
    ensure!(arcs.iter().all(|&(u, v)| u != v), "self-loop present");
    ensure!(arcs.iter().all(|&(u, v)| arcs.contains(&(v, u))), "arc without its reverse");
    let findings = validate(&g);
    ensure!(
        !findings.iter().any(|f| matches!(f, Finding::SelfLoop { .. } | Finding::DuplicateArc { .. })),
        "validation findings: {findings:?}"
    );
    Ok(format!("{} arcs, symmetric, loop-free", g.num_arcs()))
}

fn footprint_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf007);
    for _ in 0..1000 {
        let n: u64 = rng.random_range(0..=10_000_000);
        let m: u64 = rng.random_range(0..=1_000_000_000);
        for a in Algorithm::ALL {
            let f = a.footprint(n, m).map_err(|e| e.to_string())?;
            let sum: u128 = f.parts().iter().map(|p| p.1).sum();
            ensure!(sum == f.total_bytes, "{a} at n={n}, m={m}: parts sum {sum}, total {}", f.total_bytes);
        }
        let jia = footprint_jia(n, m).map_err(|e| e.to_string())?.total_bytes as i128;
        let sriram = footprint_sriram(n, m).map_err(|e| e.to_string())?.total_bytes as i128;
        let expected = 4 * n as i128 - 4 * m as i128;
        ensure!(sriram - jia == expected, "n={n}, m={m}: difference {}", sriram - jia);
    }
    Ok("1000 pairs".into())
}

fn schedule_shape() -> Verdict {
    let g = ba(2000, 10, 7);
    let hub = degree_stats(&g.csr).max;
    ensure!(hub >= 200, "largest out-degree is only {hub}");
    let vertex =
        run_strategy(&g, &StrategyConfig::new(Strategy::VertexParallel, 4), false).map_err(|e| e.to_string())?;
    let edge = run_strategy(&g, &StrategyConfig::new(Strategy::EdgeParallel, 4), false).map_err(|e| e.to_string())?;
    let (v, e) = (vertex.counters.max_task_len, edge.counters.max_task_len);
    ensure!(v >= 200, "vertex-parallel max task length {v}");
    ensure!(e == 1, "edge-parallel max task length {e}");
    Ok(format!("hub degree {hub}; max task length vertex {v}, edge {e}"))
}

fn predecessor_variants() -> Verdict {
    let g = ba(2000, 5, 11);
    let mut worst = 0.0f64;
    for workers in [1, 4] {
        let run = |pred| {
            run_strategy(&g, &StrategyConfig::new(Strategy::WorkShared, workers).with_pred(pred), true)
                .map_err(|e| e.to_string())
        };
        let (byte, bit) = (run(PredVariant::Byte)?, run(PredVariant::Bit)?);
        let (tb, tc) = (byte.trace.as_ref().unwrap(), bit.trace.as_ref().unwrap());
        ensure!(tb.len() == tc.len(), "trace lengths differ");
        for (s, (x, y)) in tb.iter().zip(tc).enumerate() {
            ensure!(x.dist == y.dist && x.sigma == y.sigma, "workers {workers}: source {s} differs");
        }
        let err = bit.scores.max_relative_error(&byte.scores);
        ensure!(err <= 1e-7, "workers {workers}: byte and bit scores differ by {err:e}");
        worst = worst.max(err);
    }

    // 64 threads each set one bit of the same word
    let mut lost = 0;
    for _ in 0..200 {
        let pm = Arc::new(PredecessorMatrix::new(PredVariant::Bit, 8).map_err(|e| e.to_string())?);
        thread::scope(|scope| {
            for k in 0..64 {
                let pm = Arc::clone(&pm);
                scope.spawn(move || pm.set(k / 8, k % 8));
            }
        });
        lost += 64 - pm.count_set();
    }
    ensure!(lost == 0, "{lost} bit updates lost");
    Ok(format!("identical sigma/dist, max score difference {worst:.1e}, no lost bit updates in 200 x 64 sets"))
}

/// Adds 1.0 to the first score of every edge-parallel run.
struct CorruptEdge;

impl Runner for CorruptEdge {
    fn run(&self, g: &GraphInputs, cfg: &StrategyConfig) -> bcpar::Result<BcRun> {
        let mut run = run_strategy(g, cfg, false)?;
        if cfg.strategy == Strategy::EdgeParallel {
            run.scores.0[0] += 1.0;
        }
        Ok(run)
    }
}

fn harness_protocol() -> Verdict {
    let g = ba(300, 3, 5);
    let graph = GraphDescriptor { beta: Some(3), seed: Some(5), ..GraphDescriptor::of(&g) };
    let configs = [
        StrategyConfig::new(Strategy::WorkShared, 2),
        StrategyConfig::new(Strategy::VertexParallel, 2),
        StrategyConfig::new(Strategy::EdgeParallel, 2),
    ];
    let opts = BenchOptions { repetitions: 5, ..Default::default() };
    let (records, table) =
        run_bench(&g, graph, &configs, &opts, &StrategyRunner, &mut WallTimer).map_err(|e| e.to_string())?;
    for r in &records {
        ensure!(r.status == RunStatus::Ok, "{} is {:?}", r.label(), r.status);
        ensure!(r.times_ms.len() == 5, "{} has {} timings", r.label(), r.times_ms.len());
        ensure!(r.min_ms <= r.mean_ms && r.mean_ms <= r.max_ms, "{} mean outside [min, max]", r.label());
    }
    ensure!(table.entries.len() == 3, "speed-up table has {} entries", table.entries.len());

    let text = emit_csv(&records);
    let rows = parse_csv(&text).map_err(|e| e.to_string())?;
    let expected: Vec<BenchRow> = records.iter().map(BenchRow::from).collect();
    ensure!(rows == expected, "CSV round trip changed the rows");

    let (records, table) =
        run_bench(&g, graph, &configs, &opts, &CorruptEdge, &mut WallTimer).map_err(|e| e.to_string())?;
    ensure!(records[2].status == RunStatus::Invalid, "corrupted run recorded as {:?}", records[2].status);
    let edge_label = configs[2].label();
    ensure!(table.ratio(&edge_label).is_none(), "invalid record in speed-up table");
    ensure!(SpeedupTable::from_records(&records, Strategy::WorkShared) == table, "table not reproducible from records");
    Ok("5 timings per record, CSV round trip exact, invalid record excluded".into())
}

fn figure_data() -> Verdict {
    let spec: SweepSpec = "nodes = 200, 400\nbeta = 1, 2, 5\nstrategies = vertex, edge, shared\n\
                           chunks = 32, 64, 128, 256\nworkers = 2\nreps = 2\n"
        .parse()
        .map_err(|e: bcpar::Error| e.to_string())?;
    let records = sweep(&spec, &StrategyRunner, &mut WallTimer, &mut |_| {}).map_err(|e| e.to_string())?;
    ensure!(records.len() == 6 * 6, "{} records", records.len());
    let rows = parse_csv(&emit_csv(&records)).map_err(|e| e.to_string())?;
    let data = plot_data(&rows, Strategy::WorkShared);

    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-plots");
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for (name, body) in data.files() {
        let blocks = body.split("\n\n\n").count();
        let points = body.lines().filter(|l| !l.is_empty() && !l.starts_with('#')).count();
        ensure!(points > 0, "{name} has no data points");
        std::fs::write(dir.join(name), body).map_err(|e| e.to_string())?;
        summary.push(format!("{name} {blocks} blocks/{points} points"));
    }
    Ok(summary.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "oracle equivalence", 10, oracle_equivalence),
        (2, "strategy correctness", 120, strategy_correctness),
        (3, "shared-design footprint", 1, shi_footprint),
        (4, "edge-list design feasibility", 1, jia_feasibility),
        (5, "generator arc count", 1, generator_counts),
        (6, "footprint identities", 1, footprint_identities),
        (7, "schedule shape", 10, schedule_shape),
        (8, "predecessor variants", 30, predecessor_variants),
        (9, "harness protocol", 30, harness_protocol),
        (10, "figure data files", 60, figure_data),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > Duration::from_secs(limit) => Err(format!("{detail}; over the {limit} s limit")),
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} {name}: {tag} ({:.2} s) {detail}", elapsed.as_secs_f64());
        failed += usize::from(verdict.is_err());
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
