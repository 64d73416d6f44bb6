// SPDX-License-Identifier: Apache-2.0

//! Work-shared strategy: one source at a time, all workers on one workspace.
//!
//! Every phase (each forward level, each backward level, accumulation) splits an index
//! range into chunks of `cfg.chunk` that workers claim from a shared counter. A phase
//! ends at a barrier whose last arrival acts as coordinator (resets the counter, ORs the
//! per-worker continuation flags, seeds the next source) before any worker is released;
//! released workers then read the coordinator's decision.

use std::ops::Range;
use std::sync::atomic::Ordering::{Acquire, Relaxed, Release};
use std::sync::atomic::{AtomicBool, AtomicI32, AtomicU64, AtomicUsize};
use std::sync::{Condvar, Mutex};
use std::thread;

use super::atomic::{checked_fetch_add, AtomicF32, AtomicF64};
use super::predecessor::PredecessorMatrix;
use super::{check_strategy, BcRun, Counters, LevelStat, SourceTrace, Strategy, StrategyConfig};
use crate::brandes::BcScores;
use crate::error::{Error, Result};
use crate::graph::EdgeListGraph;

/// Sources are processed strictly in order; the single workspace and the `n x n`
/// predecessor matrix are shared by every worker.
pub fn bc_work_shared(g: &EdgeListGraph, cfg: &StrategyConfig) -> Result<BcRun> {
    run(g, cfg, false)
}

struct Shared<'g> {
    g: &'g EdgeListGraph,
    chunk: usize,
    dist: Vec<AtomicI32>,
    sigma: Vec<AtomicU64>,
    delta: Vec<AtomicF32>,
    bc: Vec<AtomicF64>,
    pred: PredecessorMatrix,
    next_chunk: AtomicUsize,
    /// One continuation flag per worker, raised when the worker discovers a vertex.
    flags: Vec<AtomicBool>,
    /// Vertices discovered this level, for instrumentation.
    discovered: AtomicU64,
    /// Coordinator decisions, read by everyone after the release barrier.
    level: AtomicI32,
    proceed: AtomicBool,
    stop: AtomicBool,
    failed: AtomicBool,
    error: Mutex<Option<Error>>,
    barrier: PhaseBarrier,
    /// Coordinator-only bookkeeping.
    book: Mutex<Book>,
}

#[derive(Default)]
struct Book {
    frontier: u64,
    levels: Vec<LevelStat>,
    traces: Vec<SourceTrace>,
    level_count: u64,
}

/// Barrier whose last arrival runs a step before anyone is released. The mutex hand-off
/// makes every worker's writes before the barrier visible to the last arrival, and the
/// release store of the phase number publishes those and the step's writes to everyone.
///
/// Waiters yield for a bounded number of rounds before sleeping on the condvar: with more
/// workers than cores a yield hands the core straight to a worker that still has to
/// arrive, which is much cheaper than a sleep and wake-up per phase.
struct PhaseBarrier {
    workers: usize,
    /// Arrivals in the current phase.
    arrived: Mutex<usize>,
    phase: AtomicU64,
    released: Condvar,
}

const YIELD_ROUNDS: usize = 64;

impl PhaseBarrier {
    fn new(workers: usize) -> Self {
        Self { workers, arrived: Mutex::new(0), phase: AtomicU64::new(0), released: Condvar::new() }
    }

    fn wait(&self, last: impl FnOnce()) {
        let mut arrived = self.arrived.lock().unwrap();
        let phase = self.phase.load(Relaxed);
        *arrived += 1;
        if *arrived == self.workers {
            last();
            *arrived = 0;
            self.phase.store(phase.wrapping_add(1), Release);
            drop(arrived);
            self.released.notify_all();
            return;
        }
        drop(arrived);
        for _ in 0..YIELD_ROUNDS {
            if self.phase.load(Acquire) != phase {
                return;
            }
            thread::yield_now();
        }
        let arrived = self.arrived.lock().unwrap();
        drop(self.released.wait_while(arrived, |_| self.phase.load(Acquire) == phase).unwrap());
    }
}

impl Shared<'_> {
    /// Claims the next chunk of `0..len`, if any.
    fn claim(&self, len: usize) -> Option<Range<usize>> {
        let start = self.next_chunk.fetch_add(1, Relaxed).checked_mul(self.chunk)?;
        (start < len).then(|| start..(start + self.chunk).min(len))
    }

    /// Ends a phase; `coordinate` runs on exactly one worker while the rest wait.
    fn sync(&self, coordinate: impl FnOnce()) {
        self.barrier.wait(|| {
            self.next_chunk.store(0, Relaxed);
            if self.failed.load(Relaxed) {
                self.stop.store(true, Relaxed);
            }
            coordinate();
        });
    }

    fn fail(&self, e: Error) {
        self.failed.store(true, Relaxed);
        self.error.lock().unwrap().get_or_insert(e);
    }

    fn n(&self) -> usize {
        self.dist.len()
    }

    fn m(&self) -> usize {
        self.g.num_arcs()
    }
}

pub(crate) fn run(g: &EdgeListGraph, cfg: &StrategyConfig, trace: bool) -> Result<BcRun> {
    check_strategy(cfg, Strategy::WorkShared)?;
    let n = g.num_vertices();
    if n == 0 {
        return Ok(BcRun { scores: BcScores::default(), counters: Counters::default(), trace: trace.then(Vec::new) });
    }
    let workers = cfg.workers;
    let sh = Shared {
        g,
        chunk: cfg.chunk,
        dist: (0..n).map(|_| AtomicI32::new(-1)).collect(),
        sigma: (0..n).map(|_| AtomicU64::new(0)).collect(),
        delta: (0..n).map(|_| AtomicF32::new(0.0)).collect(),
        bc: (0..n).map(|_| AtomicF64::new(0.0)).collect(),
        pred: PredecessorMatrix::new(cfg.pred, n)?,
        next_chunk: AtomicUsize::new(0),
        flags: (0..workers).map(|_| AtomicBool::new(false)).collect(),
        discovered: AtomicU64::new(0),
        level: AtomicI32::new(0),
        proceed: AtomicBool::new(false),
        stop: AtomicBool::new(false),
        failed: AtomicBool::new(false),
        error: Mutex::new(None),
        barrier: PhaseBarrier::new(workers),
        book: Mutex::new(Book::default()),
    };

    let per_worker: Vec<Counters> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|id| {
                let sh = &sh;
                scope.spawn(move || worker(sh, id, trace))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    if let Some(e) = sh.error.into_inner().unwrap() {
        return Err(e);
    }
    let book = sh.book.into_inner().unwrap();
    let mut counters = Counters { levels: book.level_count, ..Counters::default() };
    for c in &per_worker {
        counters.atomic_ops += c.atomic_ops;
        counters.max_task_len = counters.max_task_len.max(c.max_task_len);
    }
    Ok(BcRun {
        scores: BcScores(sh.bc.iter().map(|x| x.load(Relaxed)).collect()),
        counters,
        trace: trace.then_some(book.traces),
    })
}

/// Coordinator step that starts source `s` on a clear workspace.
fn seed(sh: &Shared<'_>, s: usize) {
    sh.dist[s].store(0, Relaxed);
    sh.sigma[s].store(1, Relaxed);
    sh.level.store(0, Relaxed);
    let mut book = sh.book.lock().unwrap();
    book.frontier = 1;
    book.levels.clear();
}

fn worker(sh: &Shared<'_>, id: usize, trace: bool) -> Counters {
    let mut c = Counters::default();
    let (n, m) = (sh.n(), sh.m());
    let (sources, targets) = (sh.g.sources(), sh.g.targets());

    // dist, sigma, delta and the predecessor matrix start out clear and are cleared again
    // as each source finishes with them
    sh.sync(|| seed(sh, 0));
    for s in 0..n {
        // forward, one level per iteration
        loop {
            let level = sh.level.load(Relaxed);
            let next = level + 1;
            let mut found = false;
            let mut local_discovered = 0u64;
            while let Some(range) = sh.claim(m) {
                for i in range {
                    let (u, v) = (sources[i] as usize, targets[i] as usize);
                    if sh.dist[u].load(Relaxed) != level {
                        continue;
                    }
                    c.max_task_len = 1;
                    if sh.dist[v].load(Relaxed) == -1 {
                        c.atomic_ops += 1;
                        if sh.dist[v].compare_exchange(-1, next, Relaxed, Relaxed).is_ok() {
                            found = true;
                            local_discovered += 1;
                        }
                    }
                    if sh.dist[v].load(Relaxed) == next {
                        c.atomic_ops += 1;
                        if checked_fetch_add(&sh.sigma[v], sh.sigma[u].load(Relaxed), Relaxed).is_none() {
                            sh.fail(Error::SigmaOverflow { source_vertex: s, vertex: v });
                        }
                        if sh.pred.set(v, u) {
                            c.atomic_ops += 1;
                        }
                    }
                }
            }
            if found {
                sh.flags[id].store(true, Relaxed);
                sh.discovered.fetch_add(local_discovered, Relaxed);
            }
            sh.sync(|| {
                let proceed = sh.flags.iter().fold(false, |acc, f| acc | f.swap(false, Relaxed));
                let mut book = sh.book.lock().unwrap();
                let frontier = book.frontier as u32;
                book.levels.push(LevelStat { frontier, tasks: m as u64, max_task_len: u32::from(m > 0) });
                book.level_count += 1;
                book.frontier = sh.discovered.swap(0, Relaxed);
                sh.proceed.store(proceed, Relaxed);
                if proceed {
                    sh.level.store(next, Relaxed);
                }
            });
            if sh.stop.load(Relaxed) {
                return c;
            }
            if !sh.proceed.load(Relaxed) {
                break;
            }
        }

        // backward, deepest level first. A predecessor entry may be read by several
        // parallel arcs, so entries of level L + 1 are cleared only during level L, after
        // the barrier that ends their use. The source's level has no dependency to
        // compute and clears its own entries.
        let depth = sh.level.load(Relaxed);
        for level in (0..depth).rev() {
            while let Some(range) = sh.claim(m) {
                for i in range {
                    let (u, v) = (sources[i] as usize, targets[i] as usize);
                    let du = sh.dist[u].load(Relaxed);
                    if du == level && level > 0 {
                        if sh.pred.get(v, u) {
                            let term = sh.sigma[u].load(Relaxed) as f32 / sh.sigma[v].load(Relaxed) as f32
                                * (1.0 + sh.delta[v].load(Relaxed));
                            sh.delta[u].fetch_add(term, Relaxed);
                            c.atomic_ops += 1;
                        }
                    } else if (du == level + 1 || du == 0) && sh.pred.get(v, u) && sh.pred.clear(v, u) {
                        c.atomic_ops += 1;
                    }
                }
            }
            sh.sync(|| {});
        }

        if trace {
            sh.sync(|| {
                let mut book = sh.book.lock().unwrap();
                let levels = std::mem::take(&mut book.levels);
                book.traces.push(SourceTrace {
                    dist: sh.dist.iter().map(|d| d.load(Relaxed)).collect(),
                    sigma: sh.sigma.iter().map(|x| x.load(Relaxed)).collect(),
                    delta: sh.delta.iter().map(|d| d.load(Relaxed)).collect(),
                    levels,
                });
            });
        }

        // accumulate and reset for the next source
        while let Some(range) = sh.claim(n) {
            for v in range {
                if sh.dist[v].load(Relaxed) > 0 {
                    sh.bc[v].fetch_add(f64::from(sh.delta[v].load(Relaxed)), Relaxed);
                }
                sh.dist[v].store(-1, Relaxed);
                sh.sigma[v].store(0, Relaxed);
                sh.delta[v].store(0.0, Relaxed);
            }
        }
        sh.sync(|| {
            if s + 1 < n {
                seed(sh, s + 1);
            }
        });
        if sh.stop.load(Relaxed) {
            return c;
        }
    }
    c
}
