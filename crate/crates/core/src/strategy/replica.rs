// SPDX-License-Identifier: Apache-2.0

//! Source distribution and private workspaces shared by the two replicated strategies.

use std::sync::atomic::{AtomicBool, AtomicI32, AtomicU64, AtomicUsize, Ordering::Relaxed};
use std::sync::Mutex;
use std::thread;

use super::atomic::{AtomicF32, AtomicF64};
use super::{order_traces, BcRun, Counters, LevelStat, SourceTrace, StrategyConfig};
use crate::brandes::BcScores;
use crate::error::{Error, Result};

/// One worker's copy of the traversal state. Entries are atomics because the tasks of a
/// level are independent and update them with atomic operations, even though a single
/// worker executes them.
pub(crate) struct Replica {
    pub dist: Vec<AtomicI32>,
    pub sigma: Vec<AtomicU64>,
    pub delta: Vec<AtomicF32>,
    /// Reached vertices, grouped by level.
    pub order: Vec<u32>,
    pub level_starts: Vec<usize>,
    pub levels: Vec<LevelStat>,
    pub counters: Counters,
}

impl Replica {
    fn new(n: usize) -> Self {
        Self {
            dist: (0..n).map(|_| AtomicI32::new(-1)).collect(),
            sigma: (0..n).map(|_| AtomicU64::new(0)).collect(),
            delta: (0..n).map(|_| AtomicF32::new(0.0)).collect(),
            order: Vec::with_capacity(n),
            level_starts: Vec::new(),
            levels: Vec::new(),
            counters: Counters::default(),
        }
    }

    /// Clears the previous source's entries and seeds `s`.
    pub fn start(&mut self, s: usize) {
        for &v in &self.order {
            let v = v as usize;
            self.dist[v].store(-1, Relaxed);
            self.sigma[v].store(0, Relaxed);
            self.delta[v].store(0.0, Relaxed);
        }
        self.order.clear();
        self.level_starts.clear();
        self.levels.clear();
        self.dist[s].store(0, Relaxed);
        self.sigma[s].store(1, Relaxed);
        self.order.push(s as u32);
        self.level_starts.extend([0, 1]);
    }

    pub fn level(&self, l: usize) -> &[u32] {
        &self.order[self.level_starts[l]..self.level_starts[l + 1]]
    }

    pub fn depth(&self) -> usize {
        self.level_starts.len() - 1
    }

    fn snapshot(&self) -> SourceTrace {
        SourceTrace {
            dist: self.dist.iter().map(|d| d.load(Relaxed)).collect(),
            sigma: self.sigma.iter().map(|s| s.load(Relaxed)).collect(),
            delta: self.delta.iter().map(|d| d.load(Relaxed)).collect(),
            levels: self.levels.clone(),
        }
    }
}

/// Runs `per_source` for every source on `cfg.workers` threads, each owning a
/// [`Replica`], and sums the dependencies into the output at every source completion.
pub(crate) fn run_replicated<F>(n: usize, cfg: &StrategyConfig, trace: bool, per_source: F) -> Result<BcRun>
where
    F: Fn(&mut Replica, usize) -> Result<()> + Sync,
{
    if n == 0 {
        return Ok(BcRun { scores: BcScores::default(), counters: Counters::default(), trace: trace.then(Vec::new) });
    }
    let workers = cfg.workers.min(n);
    let next_source = AtomicUsize::new(0);
    let bc: Vec<AtomicF64> = (0..n).map(|_| AtomicF64::new(0.0)).collect();
    let failed = AtomicBool::new(false);
    let error: Mutex<Option<Error>> = Mutex::new(None);

    let results: Vec<(Counters, Vec<(usize, SourceTrace)>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut ws = Replica::new(n);
                    let mut traces = Vec::new();
                    loop {
                        if failed.load(Relaxed) {
                            break;
                        }
                        let s = next_source.fetch_add(1, Relaxed);
                        if s >= n {
                            break;
                        }
                        ws.start(s);
                        if let Err(e) = per_source(&mut ws, s) {
                            failed.store(true, Relaxed);
                            error.lock().unwrap().get_or_insert(e);
                            break;
                        }
                        for &v in &ws.order[1..] {
                            bc[v as usize].fetch_add(f64::from(ws.delta[v as usize].load(Relaxed)), Relaxed);
                        }
                        if trace {
                            traces.push((s, ws.snapshot()));
                        }
                    }
                    (ws.counters, traces)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    if let Some(e) = error.into_inner().unwrap() {
        return Err(e);
    }
    let mut counters = Counters::default();
    let mut parts = Vec::with_capacity(results.len());
    for (c, t) in results {
        counters.merge(&c);
        parts.push(t);
    }
    Ok(BcRun {
        scores: BcScores(bc.iter().map(|x| x.load(Relaxed)).collect()),
        counters,
        trace: trace.then(|| order_traces(n, parts)),
    })
}
