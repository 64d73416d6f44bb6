// SPDX-License-Identifier: Apache-2.0

//! Edge-parallel strategy over the arc list.

use std::sync::atomic::Ordering::Relaxed;

use super::atomic::checked_fetch_add;
use super::replica::{run_replicated, Replica};
use super::{check_strategy, BcRun, LevelStat, Strategy, StrategyConfig};
use crate::error::{Error, Result};
use crate::graph::EdgeListGraph;

/// Every level launches one task per arc; an arc `(u, v)` does work only when
/// `dist[u]` equals the current level. Tasks never scan more than one arc.
pub fn bc_edge_parallel(g: &EdgeListGraph, cfg: &StrategyConfig) -> Result<BcRun> {
    run(g, cfg, false)
}

pub(crate) fn run(g: &EdgeListGraph, cfg: &StrategyConfig, trace: bool) -> Result<BcRun> {
    check_strategy(cfg, Strategy::EdgeParallel)?;
    run_replicated(g.num_vertices(), cfg, trace, |ws, s| {
        forward(g, ws, s)?;
        backward(g, ws);
        Ok(())
    })
}

fn forward(g: &EdgeListGraph, ws: &mut Replica, s: usize) -> Result<()> {
    let (sources, targets) = (g.sources(), g.targets());
    let m = sources.len() as u64;
    let mut level = 0i32;
    let mut frontier = 1u32;
    loop {
        let next = level + 1;
        let before = ws.order.len();
        for (&u, &v) in sources.iter().zip(targets) {
            let (u, v) = (u as usize, v as usize);
            if ws.dist[u].load(Relaxed) != level {
                continue;
            }
            if ws.dist[v].load(Relaxed) == -1 {
                ws.counters.atomic_ops += 1;
                if ws.dist[v].compare_exchange(-1, next, Relaxed, Relaxed).is_ok() {
                    ws.order.push(v as u32);
                }
            }
            if ws.dist[v].load(Relaxed) == next {
                ws.counters.atomic_ops += 1;
                let sigma_u = ws.sigma[u].load(Relaxed);
                checked_fetch_add(&ws.sigma[v], sigma_u, Relaxed)
                    .ok_or(Error::SigmaOverflow { source_vertex: s, vertex: v })?;
            }
        }
        let task_len = u32::from(m > 0);
        ws.levels.push(LevelStat { frontier, tasks: m, max_task_len: task_len });
        ws.counters.levels += 1;
        ws.counters.max_task_len = ws.counters.max_task_len.max(u64::from(task_len));

        let discovered = ws.order.len() - before;
        if discovered == 0 {
            break;
        }
        ws.level_starts.push(ws.order.len());
        frontier = discovered as u32;
        level = next;
    }
    Ok(())
}

fn backward(g: &EdgeListGraph, ws: &mut Replica) {
    let (sources, targets) = (g.sources(), g.targets());
    let depth = ws.depth();
    for level in (1..depth.saturating_sub(1) as i32).rev() {
        let succ = level + 1;
        for (&u, &v) in sources.iter().zip(targets) {
            let (u, v) = (u as usize, v as usize);
            if ws.dist[u].load(Relaxed) != level || ws.dist[v].load(Relaxed) != succ {
                continue;
            }
            let term =
                ws.sigma[u].load(Relaxed) as f32 / ws.sigma[v].load(Relaxed) as f32 * (1.0 + ws.delta[v].load(Relaxed));
            ws.delta[u].fetch_add(term, Relaxed);
            ws.counters.atomic_ops += 1;
        }
    }
}
