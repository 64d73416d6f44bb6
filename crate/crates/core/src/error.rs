// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { line: usize, id: u64, n: usize },

    #[error("declared {declared} arcs but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("shortest-path count overflowed u64 (source {source_vertex}, vertex {vertex})")]
    SigmaOverflow { source_vertex: usize, vertex: usize },

    #[error("graph with {n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
