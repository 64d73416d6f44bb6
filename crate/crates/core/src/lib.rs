// SPDX-License-Identifier: Apache-2.0

//! Betweenness centrality for unweighted directed graphs under three parallel
//! scheduling strategies, with the oracles, input generator, memory model and
//! benchmark harness used to compare them.

pub mod bench;
pub mod brandes;
pub mod error;
pub mod generator;
pub mod graph;
pub mod memory;
pub mod strategy;
pub mod verify;

pub use brandes::{bc_bruteforce, bc_sequential, BcScores, SourceWorkspace};
pub use error::{Error, Result};
pub use generator::{generate_ba_directed, BaParams};
pub use graph::{build_csr, load_edge_list, CsrGraph, EdgeListGraph, GraphInputs};
pub use strategy::{run_strategy, BcRun, Counters, PredVariant, Strategy, StrategyConfig};
pub use verify::{verify_graph, VerifyOptions, VerifyReport};
