// SPDX-License-Identifier: Apache-2.0

//! Vertex-parallel strategy over adjacency lists.

use std::sync::atomic::Ordering::Relaxed;

use super::atomic::checked_fetch_add;
use super::replica::{run_replicated, Replica};
use super::{check_strategy, BcRun, LevelStat, Strategy, StrategyConfig};
use crate::error::{Error, Result};
use crate::graph::CsrGraph;

/// Each frontier vertex is a task that walks its full neighbour list, so one hub makes
/// its whole level as long as the hub's out-degree.
pub fn bc_vertex_parallel(g: &CsrGraph, cfg: &StrategyConfig) -> Result<BcRun> {
    run(g, cfg, false)
}

pub(crate) fn run(g: &CsrGraph, cfg: &StrategyConfig, trace: bool) -> Result<BcRun> {
    check_strategy(cfg, Strategy::VertexParallel)?;
    run_replicated(g.num_vertices(), cfg, trace, |ws, s| process_source(g, ws, s))
}

fn process_source(g: &CsrGraph, ws: &mut Replica, s: usize) -> Result<()> {
    forward(g, ws, s)?;
    backward(g, ws);
    Ok(())
}

fn forward(g: &CsrGraph, ws: &mut Replica, s: usize) -> Result<()> {
    let mut level = 0;
    loop {
        let (start, end) = (ws.level_starts[level], ws.level_starts[level + 1]);
        if start == end {
            break;
        }
        let next = level as i32 + 1;
        let mut stat = LevelStat { frontier: (end - start) as u32, tasks: (end - start) as u64, max_task_len: 0 };
        for i in start..end {
            // one task
            let u = ws.order[i] as usize;
            let neighbors = g.neighbors(u);
            stat.max_task_len = stat.max_task_len.max(neighbors.len() as u32);
            let sigma_u = ws.sigma[u].load(Relaxed);
            for &v in neighbors {
                let v = v as usize;
                if ws.dist[v].load(Relaxed) == -1 {
                    ws.counters.atomic_ops += 1;
                    if ws.dist[v].compare_exchange(-1, next, Relaxed, Relaxed).is_ok() {
                        ws.order.push(v as u32);
                    }
                }
                if ws.dist[v].load(Relaxed) == next {
                    ws.counters.atomic_ops += 1;
                    checked_fetch_add(&ws.sigma[v], sigma_u, Relaxed)
                        .ok_or(Error::SigmaOverflow { source_vertex: s, vertex: v })?;
                }
            }
        }
        ws.level_starts.push(ws.order.len());
        ws.counters.levels += 1;
        ws.counters.max_task_len = ws.counters.max_task_len.max(u64::from(stat.max_task_len));
        ws.levels.push(stat);
        level += 1;
    }
    // the last pushed level is empty
    ws.level_starts.pop();
    Ok(())
}

fn backward(g: &CsrGraph, ws: &mut Replica) {
    let depth = ws.depth();
    for level in (1..depth.saturating_sub(1)).rev() {
        let succ = level as i32 + 1;
        let mut ops = 0;
        for &u in ws.level(level) {
            let u = u as usize;
            let sigma_u = ws.sigma[u].load(Relaxed) as f32;
            for &w in g.neighbors(u) {
                let w = w as usize;
                if ws.dist[w].load(Relaxed) == succ {
                    let term = sigma_u / ws.sigma[w].load(Relaxed) as f32 * (1.0 + ws.delta[w].load(Relaxed));
                    ws.delta[u].fetch_add(term, Relaxed);
                    ops += 1;
                }
            }
        }
        ws.counters.atomic_ops += ops;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brandes::bc_sequential;
    use crate::generator::{generate_ba_directed, BaParams};
    use crate::graph::{build_csr, EdgeListGraph};

    fn cfg(workers: usize) -> StrategyConfig {
        StrategyConfig::new(Strategy::VertexParallel, workers)
    }

    #[test]
    fn path_graph() {
        let g = build_csr(&EdgeListGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap());
        let run = bc_vertex_parallel(&g, &cfg(4)).unwrap();
        assert_eq!(run.scores.0, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn degenerate_sizes() {
        let empty = build_csr(&EdgeListGraph::from_arcs(0, &[]).unwrap());
        assert!(bc_vertex_parallel(&empty, &cfg(2)).unwrap().scores.is_empty());
        let single = build_csr(&EdgeListGraph::from_arcs(1, &[]).unwrap());
        assert_eq!(bc_vertex_parallel(&single, &cfg(2)).unwrap().scores.0, vec![0.0]);
    }

    #[test]
    fn matches_oracle_for_several_worker_counts() {
        let g = build_csr(&generate_ba_directed(BaParams::new(500, 2, 3)).unwrap());
        let oracle = bc_sequential(&g).unwrap();
        for workers in [1, 2, 8] {
            let run = bc_vertex_parallel(&g, &cfg(workers)).unwrap();
            assert!(run.scores.max_relative_error(&oracle) <= 1e-6, "workers={workers}");
        }
    }

    #[test]
    fn single_worker_is_deterministic() {
        let g = build_csr(&generate_ba_directed(BaParams::new(300, 3, 1)).unwrap());
        let a = bc_vertex_parallel(&g, &cfg(1)).unwrap();
        let b = bc_vertex_parallel(&g, &cfg(1)).unwrap();
        assert_eq!(a.scores, b.scores);
        assert_eq!(a.counters, b.counters);
    }

    #[test]
    fn wrong_strategy_is_rejected() {
        let g = build_csr(&EdgeListGraph::from_arcs(1, &[]).unwrap());
        assert!(bc_vertex_parallel(&g, &StrategyConfig::new(Strategy::EdgeParallel, 1)).is_err());
        assert!(bc_vertex_parallel(&g, &cfg(0)).is_err());
    }
}
