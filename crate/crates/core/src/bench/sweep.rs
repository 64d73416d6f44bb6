// SPDX-License-Identifier: Apache-2.0

//! Cartesian sweeps over graph size, attachment parameter and strategy settings.

use std::str::FromStr;

use super::{run_bench, BenchOptions, BenchRecord, GraphDescriptor, Runner, Timer};
use crate::error::{Error, Result};
use crate::generator::{generate_ba_directed, BaParams};
use crate::graph::GraphInputs;
use crate::memory::Algorithm;
use crate::strategy::{PredVariant, Strategy, StrategyConfig};

/// A sweep description, read from flat `key = value` lines. List values are
/// comma-separated; `#` starts a comment.
///
/// ```text
/// nodes = 500, 1000
/// beta = 1, 5
/// strategies = edge, shared
/// chunks = 32, 128
/// preds = byte
/// workers = 4
/// seed = 1
/// reps = 5
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub nodes: Vec<usize>,
    pub betas: Vec<usize>,
    pub strategies: Vec<Strategy>,
    /// Chunk sizes, swept for the work-shared strategy only.
    pub chunks: Vec<usize>,
    /// Predecessor layouts, swept for the work-shared strategy only.
    pub preds: Vec<PredVariant>,
    pub workers: usize,
    pub seed: u64,
    pub reps: usize,
    pub warmup: bool,
    pub baseline: Strategy,
    /// Settings whose modeled footprint exceeds this many bytes are skipped.
    pub memory_cap: Option<u128>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            nodes: Vec::new(),
            betas: Vec::new(),
            strategies: Vec::new(),
            chunks: vec![StrategyConfig::DEFAULT_CHUNK],
            preds: vec![PredVariant::Byte],
            workers: 1,
            seed: 1,
            reps: super::DEFAULT_REPETITIONS,
            warmup: false,
            baseline: Strategy::WorkShared,
            memory_cap: None,
        }
    }
}

fn list<T: FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| scalar(key, s, line)).collect()
}

fn scalar<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse { line, msg: format!("bad value {value:?} for {key}") })
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut spec = SweepSpec::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| Error::Parse { line, msg: format!("expected key = value, got {body:?}") })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "nodes" => spec.nodes = list(key, value, line)?,
                "beta" | "betas" => spec.betas = list(key, value, line)?,
                "strategies" | "strategy" => spec.strategies = list(key, value, line)?,
                "chunks" | "chunk" => spec.chunks = list(key, value, line)?,
                "preds" | "pred" => spec.preds = list(key, value, line)?,
                "workers" => spec.workers = scalar(key, value, line)?,
                "seed" => spec.seed = scalar(key, value, line)?,
                "reps" => spec.reps = scalar(key, value, line)?,
                "warmup" => spec.warmup = scalar(key, value, line)?,
                "baseline" => spec.baseline = scalar(key, value, line)?,
                "memory_cap" => spec.memory_cap = Some(scalar(key, value, line)?),
                other => return Err(Error::Parse { line, msg: format!("unknown key {other:?}") }),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let empty = |what: &str| Error::InvalidParams(format!("sweep needs at least one {what}"));
        if self.nodes.is_empty() {
            return Err(empty("node count"));
        }
        if self.betas.is_empty() {
            return Err(empty("beta"));
        }
        if self.strategies.is_empty() {
            return Err(empty("strategy"));
        }
        if self.chunks.is_empty() {
            return Err(empty("chunk size"));
        }
        if self.preds.is_empty() {
            return Err(empty("predecessor variant"));
        }
        if self.reps == 0 {
            return Err(Error::InvalidParams("reps must be at least 1".into()));
        }
        for &n in &self.nodes {
            for &beta in &self.betas {
                BaParams::new(n, beta, self.seed).validate()?;
            }
        }
        for cfg in self.configs() {
            cfg.validate()?;
        }
        Ok(())
    }

    /// Strategy configurations run on every graph, in output order.
    pub fn configs(&self) -> Vec<StrategyConfig> {
        let mut out = Vec::new();
        for &strategy in &self.strategies {
            let base = StrategyConfig::new(strategy, self.workers);
            if strategy == Strategy::WorkShared {
                for &chunk in &self.chunks {
                    for &pred in &self.preds {
                        out.push(base.with_chunk(chunk).with_pred(pred));
                    }
                }
            } else {
                out.push(base.with_chunk(self.chunks[0]));
            }
        }
        out
    }

    pub fn options(&self) -> BenchOptions {
        BenchOptions { repetitions: self.reps, warmup: self.warmup, baseline: self.baseline }
    }
}

/// The footprint model the memory cap is checked against.
pub fn modeled_algorithm(strategy: Strategy) -> Option<Algorithm> {
    match strategy {
        Strategy::Sequential => None,
        Strategy::VertexParallel => Some(Algorithm::Sriram),
        Strategy::EdgeParallel => Some(Algorithm::Jia),
        Strategy::WorkShared => Some(Algorithm::Shi),
    }
}

/// Runs every cell of `spec`. Each graph is generated once and shared by all
/// configurations of its cell; `on_record` sees records as they complete.
pub fn sweep(
    spec: &SweepSpec,
    runner: &dyn Runner,
    timer: &mut dyn Timer,
    on_record: &mut dyn FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>> {
    spec.validate()?;
    let configs = spec.configs();
    let opts = spec.options();
    let mut records = Vec::new();

    for &n in &spec.nodes {
        for &beta in &spec.betas {
            let params = BaParams::new(n, beta, spec.seed);
            let graph = GraphDescriptor { n, m: params.arc_count(), beta: Some(beta), seed: Some(spec.seed) };

            let mut cell: Vec<Option<BenchRecord>> = Vec::with_capacity(configs.len());
            let mut runnable = Vec::new();
            for cfg in &configs {
                let footprint = modeled_algorithm(cfg.strategy)
                    .map(|a| a.footprint(n as u64, graph.m as u64))
                    .transpose()?
                    .map(|f| f.total_bytes);
                match (spec.memory_cap, footprint) {
                    (Some(cap), Some(bytes)) if bytes > cap => {
                        cell.push(Some(BenchRecord::skipped(graph, *cfg, bytes)));
                    }
                    _ => {
                        cell.push(None);
                        runnable.push(*cfg);
                    }
                }
            }

            let mut measured = if runnable.is_empty() {
                Vec::new().into_iter()
            } else {
                let inputs = GraphInputs::new(generate_ba_directed(params)?);
                run_bench(&inputs, graph, &runnable, &opts, runner, timer)?.0.into_iter()
            };
            for slot in cell {
                let record = slot.unwrap_or_else(|| measured.next().expect("one record per runnable config"));
                on_record(&record);
                records.push(record);
            }
        }
    }
    Ok(records)
}
