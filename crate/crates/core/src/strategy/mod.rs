// SPDX-License-Identifier: Apache-2.0

//! Parallel Brandes strategies on a shared-memory worker pool.
//!
//! * [`Strategy::VertexParallel`]: sources are spread over workers, each with a private
//!   workspace. Within a source every frontier vertex is one task that scans its whole
//!   neighbour list.
//! * [`Strategy::EdgeParallel`]: same replication, but every BFS level scans all `m` arcs
//!   as one-arc tasks; an arc is active when its tail sits on the frontier.
//! * [`Strategy::WorkShared`]: one source at a time; all workers cooperate on a single
//!   shared workspace and predecessor matrix, grabbing arc chunks from a shared counter
//!   and meeting at a coordinator barrier after every level.
//!
//! Path counts are `u64` with overflow checks. Dependencies are accumulated in `f32`
//! through atomic adds; the per-vertex output sums are kept in `f64`.

mod atomic;
mod edge;
pub mod predecessor;
mod replica;
mod shared;
mod vertex;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use atomic::{AtomicF32, AtomicF64};
pub use edge::bc_edge_parallel;
pub use predecessor::{set_predecessor, PredVariant, PredecessorMatrix};
pub use shared::bc_work_shared;
pub use vertex::bc_vertex_parallel;

use crate::brandes::{bc_sequential, BcScores};
use crate::error::{Error, Result};
use crate::graph::GraphInputs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[serde(rename = "seq")]
    Sequential,
    #[serde(rename = "vertex")]
    VertexParallel,
    #[serde(rename = "edge")]
    EdgeParallel,
    #[serde(rename = "shared")]
    WorkShared,
}

impl Strategy {
    pub const ALL: [Strategy; 4] =
        [Strategy::Sequential, Strategy::VertexParallel, Strategy::EdgeParallel, Strategy::WorkShared];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Sequential => "seq",
            Strategy::VertexParallel => "vertex",
            Strategy::EdgeParallel => "edge",
            Strategy::WorkShared => "shared",
        }
    }

    /// Per-vertex relative tolerance against the `f64` sequential result.
    pub fn tolerance(self) -> f64 {
        match self {
            Strategy::Sequential => 1e-9,
            Strategy::VertexParallel | Strategy::EdgeParallel => 1e-6,
            Strategy::WorkShared => 1e-4,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq" | "sequential" => Ok(Strategy::Sequential),
            "vertex" | "vertex_parallel" => Ok(Strategy::VertexParallel),
            "edge" | "edge_parallel" => Ok(Strategy::EdgeParallel),
            "shared" | "work_shared" => Ok(Strategy::WorkShared),
            other => Err(Error::InvalidParams(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StrategyConfig {
    pub strategy: Strategy,
    pub workers: usize,
    /// Arcs per grab from the shared counter (work-shared only).
    pub chunk: usize,
    /// Predecessor matrix layout (work-shared only).
    pub pred: PredVariant,
}

impl StrategyConfig {
    pub const DEFAULT_CHUNK: usize = 128;

    pub fn new(strategy: Strategy, workers: usize) -> Self {
        Self { strategy, workers, chunk: Self::DEFAULT_CHUNK, pred: PredVariant::Byte }
    }

    pub fn with_chunk(mut self, chunk: usize) -> Self {
        self.chunk = chunk;
        self
    }

    pub fn with_pred(mut self, pred: PredVariant) -> Self {
        self.pred = pred;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidParams("worker count must be positive".into()));
        }
        if self.chunk == 0 {
            return Err(Error::InvalidParams("chunk size must be positive".into()));
        }
        Ok(())
    }

    /// Short label such as `shared/w4/c128/bit`, unique per distinct configuration within a graph.
    pub fn label(&self) -> String {
        match self.strategy {
            Strategy::Sequential => "seq".to_owned(),
            Strategy::WorkShared => {
                format!("shared/w{}/c{}/{}", self.workers, self.chunk, self.pred)
            }
            s => format!("{s}/w{}", self.workers),
        }
    }
}

/// Instrumentation collected on every run.
///
/// `atomic_ops` counts the read-modify-write operations a strategy issues on traversal
/// state: distance compare-and-set, path-count adds, dependency adds and bit-packed
/// predecessor updates. Output accumulation is not counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Forward BFS levels executed, summed over sources.
    pub levels: u64,
    pub atomic_ops: u64,
    /// Longest neighbour scan performed by a single task.
    pub max_task_len: u64,
}

impl Counters {
    pub(crate) fn merge(&mut self, other: &Counters) {
        self.levels += other.levels;
        self.atomic_ops += other.atomic_ops;
        self.max_task_len = self.max_task_len.max(other.max_task_len);
    }
}

/// Shape of one forward BFS level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LevelStat {
    /// Vertices on the frontier when the level started.
    pub frontier: u32,
    /// Parallel tasks the level was split into.
    pub tasks: u64,
    /// Longest scan of any one task.
    pub max_task_len: u32,
}

/// Per-source state captured after the backward phase.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceTrace {
    pub dist: Vec<i32>,
    pub sigma: Vec<u64>,
    pub delta: Vec<f32>,
    pub levels: Vec<LevelStat>,
}

#[derive(Clone, Debug)]
pub struct BcRun {
    pub scores: BcScores,
    pub counters: Counters,
    /// One entry per source, in source order, when tracing was requested.
    pub trace: Option<Vec<SourceTrace>>,
}

/// Runs `cfg` on `g`. With `trace` set, per-source state is kept (`O(n^2)` memory).
pub fn run_strategy(g: &GraphInputs, cfg: &StrategyConfig, trace: bool) -> Result<BcRun> {
    match cfg.strategy {
        Strategy::Sequential => {
            cfg.validate()?;
            if trace {
                return Err(Error::InvalidParams("tracing is only available for the parallel strategies".into()));
            }
            Ok(BcRun { scores: bc_sequential(&g.csr)?, counters: Counters::default(), trace: None })
        }
        Strategy::VertexParallel => vertex::run(&g.csr, cfg, trace),
        Strategy::EdgeParallel => edge::run(&g.edges, cfg, trace),
        Strategy::WorkShared => shared::run(&g.edges, cfg, trace),
    }
}

pub(crate) fn check_strategy(cfg: &StrategyConfig, expected: Strategy) -> Result<()> {
    cfg.validate()?;
    if cfg.strategy != expected {
        return Err(Error::InvalidParams(format!(
            "configuration is for {} but {} was requested",
            cfg.strategy, expected
        )));
    }
    Ok(())
}

/// Gathers per-worker `(source, trace)` pairs into source order.
pub(crate) fn order_traces(n: usize, parts: Vec<Vec<(usize, SourceTrace)>>) -> Vec<SourceTrace> {
    let mut slots: Vec<Option<SourceTrace>> = (0..n).map(|_| None).collect();
    for (s, t) in parts.into_iter().flatten() {
        slots[s] = Some(t);
    }
    slots.into_iter().map(|t| t.expect("every source traced")).collect()
}
