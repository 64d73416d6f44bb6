// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{BenchRecord, RunStatus};
use crate::error::Result;
use crate::strategy::{PredVariant, Strategy, StrategyConfig};

pub const CSV_COLUMNS: [&str; 18] = [
    "n",
    "m",
    "d",
    "beta",
    "seed",
    "strategy",
    "workers",
    "chunk",
    "pred_variant",
    "reps",
    "mean_ms",
    "min_ms",
    "max_ms",
    "levels",
    "atomic_ops",
    "max_task_len",
    "checksum",
    "status",
];

/// One CSV line. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub d: f64,
    pub beta: Option<usize>,
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub workers: usize,
    pub chunk: usize,
    pub pred_variant: PredVariant,
    pub reps: usize,
    pub mean_ms: f64,
    pub min_ms: f64,
    pub max_ms: f64,
    pub levels: u64,
    pub atomic_ops: u64,
    pub max_task_len: u64,
    pub checksum: f64,
    pub status: RunStatus,
}

impl BenchRow {
    pub fn config(&self) -> StrategyConfig {
        StrategyConfig { strategy: self.strategy, workers: self.workers, chunk: self.chunk, pred: self.pred_variant }
    }

    pub fn label(&self) -> String {
        self.config().label()
    }
}

impl From<&BenchRecord> for BenchRow {
    fn from(r: &BenchRecord) -> Self {
        Self {
            n: r.graph.n,
            m: r.graph.m,
            d: r.graph.density(),
            beta: r.graph.beta,
            seed: r.graph.seed,
            strategy: r.config.strategy,
            workers: r.config.workers,
            chunk: r.config.chunk,
            pred_variant: r.config.pred,
            reps: r.repetitions(),
            mean_ms: r.mean_ms,
            min_ms: r.min_ms,
            max_ms: r.max_ms,
            levels: r.counters.levels,
            atomic_ops: r.counters.atomic_ops,
            max_task_len: r.counters.max_task_len,
            checksum: r.checksum,
            status: r.status,
        }
    }
}

/// Header line plus one row per record.
pub fn emit_csv(records: &[BenchRecord]) -> String {
    let mut w = ::csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("writing to memory");
    for r in records {
        w.serialize(BenchRow::from(r)).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut r = ::csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_COLUMNS {
        return Err(crate::Error::Parse { line: 1, msg: format!("unexpected CSV header {header:?}") });
    }
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}
