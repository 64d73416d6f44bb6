// SPDX-License-Identifier: Apache-2.0

//! Timing harness: repeated runs, oracle checks, aggregation and speed-up tables.
//!
//! Only the strategy call itself sits inside the timed section. The oracle, the checksum
//! comparison, graph generation and all I/O happen outside it.

mod csv;
mod plot;
mod sweep;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use self::csv::{emit_csv, parse_csv, BenchRow, CSV_COLUMNS};
pub use plot::{plot_data, PlotData};
pub use sweep::{modeled_algorithm, sweep, SweepSpec};

use crate::brandes::relative_error;
use crate::error::Result;
use crate::graph::GraphInputs;
use crate::strategy::{run_strategy, BcRun, Counters, Strategy, StrategyConfig};

pub const DEFAULT_REPETITIONS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RunStatus {
    Ok,
    /// At least one run's checksum disagreed with the oracle.
    Invalid,
    /// Not run: the modeled footprint exceeds the memory cap.
    Skipped,
    /// The strategy returned an error.
    Failed,
}

/// What the record was measured on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphDescriptor {
    pub n: usize,
    pub m: usize,
    pub beta: Option<usize>,
    pub seed: Option<u64>,
}

impl GraphDescriptor {
    pub fn of(g: &GraphInputs) -> Self {
        Self { n: g.num_vertices(), m: g.num_arcs(), beta: None, seed: None }
    }

    pub fn density(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m as f64 / self.n as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub graph: GraphDescriptor,
    pub config: StrategyConfig,
    /// Wall time of each timed run, in milliseconds.
    pub times_ms: Vec<f64>,
    pub mean_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub counters: Counters,
    /// Sum of the first run's scores.
    pub checksum: f64,
    pub status: RunStatus,
    /// Modeled footprint in bytes, attached to skipped records.
    pub footprint_bytes: Option<u128>,
    pub note: Option<String>,
}

impl BenchRecord {
    fn empty(graph: GraphDescriptor, config: StrategyConfig, status: RunStatus) -> Self {
        Self {
            graph,
            config,
            times_ms: Vec::new(),
            mean_ms: 0.0,
            min_ms: 0.0,
            max_ms: 0.0,
            counters: Counters::default(),
            checksum: 0.0,
            status,
            footprint_bytes: None,
            note: None,
        }
    }

    pub(crate) fn skipped(graph: GraphDescriptor, config: StrategyConfig, footprint: u128) -> Self {
        let mut r = Self::empty(graph, config, RunStatus::Skipped);
        r.footprint_bytes = Some(footprint);
        r
    }

    pub fn repetitions(&self) -> usize {
        self.times_ms.len()
    }

    pub fn label(&self) -> String {
        self.config.label()
    }
}

/// Measures one closure call.
pub trait Timer {
    fn time(&mut self, f: &mut dyn FnMut()) -> Duration;
}

/// Monotonic wall clock.
#[derive(Clone, Copy, Debug, Default)]
pub struct WallTimer;

impl Timer for WallTimer {
    fn time(&mut self, f: &mut dyn FnMut()) -> Duration {
        let start = Instant::now();
        f();
        start.elapsed()
    }
}

/// Executes a strategy. The default goes straight to [`run_strategy`]; tests substitute
/// their own to inject faults.
pub trait Runner {
    fn run(&self, g: &GraphInputs, cfg: &StrategyConfig) -> Result<BcRun>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StrategyRunner;

impl Runner for StrategyRunner {
    fn run(&self, g: &GraphInputs, cfg: &StrategyConfig) -> Result<BcRun> {
        run_strategy(g, cfg, false)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchOptions {
    pub repetitions: usize,
    /// Run each configuration once untimed before measuring.
    pub warmup: bool,
    pub baseline: Strategy,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self { repetitions: DEFAULT_REPETITIONS, warmup: false, baseline: Strategy::WorkShared }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpeedupEntry {
    pub label: String,
    /// Baseline mean time divided by this configuration's mean time.
    pub ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpeedupTable {
    /// Label of the baseline record, `None` when no valid baseline run exists.
    pub baseline: Option<String>,
    pub entries: Vec<SpeedupEntry>,
}

impl SpeedupTable {
    /// Builds the table from records of one graph. The baseline is the first valid record
    /// of strategy `baseline`; records that are not [`RunStatus::Ok`] are left out.
    pub fn from_records(records: &[BenchRecord], baseline: Strategy) -> Self {
        let valid = || records.iter().filter(|r| r.status == RunStatus::Ok);
        let Some(base) = valid().find(|r| r.config.strategy == baseline) else {
            return Self::default();
        };
        Self {
            baseline: Some(base.label()),
            entries: valid().map(|r| SpeedupEntry { label: r.label(), ratio: base.mean_ms / r.mean_ms }).collect(),
        }
    }

    pub fn ratio(&self, label: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.ratio)
    }
}

/// Times every configuration on one graph.
///
/// The sequential oracle is run once, untimed, through `runner`. Each timed run's
/// checksum must match the oracle's within the strategy's tolerance; otherwise the record
/// is marked [`RunStatus::Invalid`]. Errors from a configuration mark it
/// [`RunStatus::Failed`] without aborting the others.
pub fn run_bench(
    g: &GraphInputs,
    graph: GraphDescriptor,
    configs: &[StrategyConfig],
    opts: &BenchOptions,
    runner: &dyn Runner,
    timer: &mut dyn Timer,
) -> Result<(Vec<BenchRecord>, SpeedupTable)> {
    if opts.repetitions == 0 {
        return Err(crate::Error::InvalidParams("repetitions must be at least 1".into()));
    }
    for cfg in configs {
        cfg.validate()?;
    }
    let oracle = runner.run(g, &StrategyConfig::new(Strategy::Sequential, 1))?.scores.checksum();

    let mut records = Vec::with_capacity(configs.len());
    for cfg in configs {
        records.push(bench_one(g, graph, cfg, opts, oracle, runner, timer));
    }
    let table = SpeedupTable::from_records(&records, opts.baseline);
    Ok((records, table))
}

fn bench_one(
    g: &GraphInputs,
    graph: GraphDescriptor,
    cfg: &StrategyConfig,
    opts: &BenchOptions,
    oracle_checksum: f64,
    runner: &dyn Runner,
    timer: &mut dyn Timer,
) -> BenchRecord {
    let failed = |e: crate::Error| {
        let mut r = BenchRecord::empty(graph, *cfg, RunStatus::Failed);
        r.note = Some(e.to_string());
        r
    };
    if opts.warmup {
        if let Err(e) = runner.run(g, cfg) {
            return failed(e);
        }
    }

    let mut times = Vec::with_capacity(opts.repetitions);
    let mut checksums = Vec::with_capacity(opts.repetitions);
    let mut counters = Counters::default();
    for _ in 0..opts.repetitions {
        let mut outcome = None;
        let elapsed = timer.time(&mut || outcome = Some(runner.run(g, cfg)));
        match outcome.expect("timer must call the closure") {
            Ok(run) => {
                times.push(elapsed.as_nanos() as f64 / 1e6);
                checksums.push(run.scores.checksum());
                counters = run.counters;
            }
            Err(e) => return failed(e),
        }
    }

    let tolerance = cfg.strategy.tolerance();
    let worst = checksums.iter().map(|&c| relative_error(c, oracle_checksum)).fold(0.0, f64::max);
    let status = if worst <= tolerance { RunStatus::Ok } else { RunStatus::Invalid };
    let mean = times.iter().sum::<f64>() / times.len() as f64;
    let min = times.iter().copied().fold(f64::INFINITY, f64::min);
    let max = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    BenchRecord {
        graph,
        config: *cfg,
        times_ms: times,
        mean_ms: mean.clamp(min, max),
        min_ms: min,
        max_ms: max,
        counters,
        checksum: checksums[0],
        status,
        footprint_bytes: None,
        note: (status == RunStatus::Invalid)
            .then(|| format!("checksum relative error {worst:e} exceeds {tolerance:e}")),
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use std::cell::Cell;
    use std::rc::Rc;

    /// Returns scripted durations and exposes whether a timed section is open.
    pub struct ScriptedTimer {
        pub script: Vec<Duration>,
        pub calls: usize,
        pub inside: Rc<Cell<bool>>,
    }

    impl ScriptedTimer {
        pub fn new(script: Vec<Duration>) -> Self {
            Self { script, calls: 0, inside: Rc::new(Cell::new(false)) }
        }
    }

    impl Timer for ScriptedTimer {
        fn time(&mut self, f: &mut dyn FnMut()) -> Duration {
            self.inside.set(true);
            f();
            self.inside.set(false);
            let d = self.script[self.calls % self.script.len()];
            self.calls += 1;
            d
        }
    }
}
