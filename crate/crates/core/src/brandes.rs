// SPDX-License-Identifier: Apache-2.0

//! Sequential Brandes betweenness centrality and a brute-force APSP oracle.
//!
//! Scores are unnormalized and count ordered pairs `(s, t)` with `s != v != t`.
//! Parallel arcs count as distinct paths; self-loops never lie on a shortest path.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::graph::{CsrGraph, VertexId};

/// Largest graph [`bc_bruteforce`] accepts.
pub const BRUTEFORCE_MAX_VERTICES: usize = 64;

/// Per-vertex centrality scores.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BcScores(pub Vec<f64>);

impl BcScores {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Sum of all scores.
    pub fn checksum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Largest per-vertex relative error of `self` against `reference`.
    ///
    /// Where the reference is exactly zero the absolute value is used. Length mismatch
    /// yields infinity.
    pub fn max_relative_error(&self, reference: &BcScores) -> f64 {
        if self.len() != reference.len() {
            return f64::INFINITY;
        }
        self.0.iter().zip(&reference.0).map(|(&a, &b)| relative_error(a, b)).fold(0.0, f64::max)
    }
}

impl Index<usize> for BcScores {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.0[v]
    }
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    if value == reference {
        return 0.0;
    }
    let diff = (value - reference).abs();
    if reference == 0.0 {
        diff
    } else if diff.is_nan() {
        f64::INFINITY
    } else {
        diff / reference.abs()
    }
}

/// Single-source state of Brandes' algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceWorkspace {
    pub source: usize,
    /// BFS level, `-1` when unreachable.
    pub dist: Vec<i32>,
    /// Number of shortest paths from the source.
    pub sigma: Vec<u64>,
    /// Dependency of the source on each vertex.
    pub delta: Vec<f64>,
    /// Reachable vertices in nondecreasing-distance discovery order.
    pub visit_order: Vec<VertexId>,
}

impl SourceWorkspace {
    fn new(n: usize, source: usize) -> Self {
        Self { source, dist: vec![-1; n], sigma: vec![0; n], delta: vec![0.0; n], visit_order: Vec::with_capacity(n) }
    }

    fn reset(&mut self, source: usize) {
        for &v in &self.visit_order {
            let v = v as usize;
            self.dist[v] = -1;
            self.sigma[v] = 0;
            self.delta[v] = 0.0;
        }
        self.visit_order.clear();
        self.source = source;
    }
}

/// Forward phase: BFS levels and shortest-path counts from `s`.
pub fn bfs_forward(g: &CsrGraph, s: usize) -> Result<SourceWorkspace> {
    let mut ws = SourceWorkspace::new(g.num_vertices(), s);
    forward_into(g, &mut ws)?;
    Ok(ws)
}

fn forward_into(g: &CsrGraph, ws: &mut SourceWorkspace) -> Result<()> {
    let s = ws.source;
    ws.dist[s] = 0;
    ws.sigma[s] = 1;
    ws.visit_order.push(s as VertexId);
    let mut head = 0;
    while head < ws.visit_order.len() {
        let u = ws.visit_order[head] as usize;
        head += 1;
        let next = ws.dist[u] + 1;
        for &v in g.neighbors(u) {
            let v = v as usize;
            if ws.dist[v] < 0 {
                ws.dist[v] = next;
                ws.visit_order.push(v as VertexId);
            }
            if ws.dist[v] == next {
                ws.sigma[v] =
                    ws.sigma[v].checked_add(ws.sigma[u]).ok_or(Error::SigmaOverflow { source_vertex: s, vertex: v })?;
            }
        }
    }
    Ok(())
}

/// Backward phase: fills `ws.delta` by walking the visit order in reverse.
pub fn accumulate_dependencies(g: &CsrGraph, ws: &mut SourceWorkspace) {
    for &v in ws.visit_order.iter().rev() {
        let v = v as usize;
        let succ_level = ws.dist[v] + 1;
        let sigma_v = ws.sigma[v] as f64;
        let mut acc = 0.0;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if ws.dist[w] == succ_level {
                acc += sigma_v / ws.sigma[w] as f64 * (1.0 + ws.delta[w]);
            }
        }
        ws.delta[v] = acc;
    }
}

/// Brandes' algorithm over every source, in `f64`.
pub fn bc_sequential(g: &CsrGraph) -> Result<BcScores> {
    let n = g.num_vertices();
    let mut bc = BcScores::zeros(n);
    if n == 0 {
        return Ok(bc);
    }
    let mut ws = SourceWorkspace::new(n, 0);
    for s in 0..n {
        ws.reset(s);
        forward_into(g, &mut ws)?;
        accumulate_dependencies(g, &mut ws);
        for &v in &ws.visit_order[1..] {
            bc.0[v as usize] += ws.delta[v as usize];
        }
    }
    Ok(bc)
}

/// All-pairs oracle for small graphs, independent of the Brandes recurrence.
///
/// Distances come from Floyd–Warshall. Shortest-path counts come from counting walks
/// of length `dist(s, t)`, which are exactly the shortest paths; walks are extended one
/// arc at a time and entries that are not at their shortest distance are dropped.
/// Then `BC(v) = sum over s != v != t with dist(s,v) + dist(v,t) = dist(s,t) of
/// sigma(s,v) * sigma(v,t) / sigma(s,t)`.
pub fn bc_bruteforce(g: &CsrGraph) -> Result<BcScores> {
    let n = g.num_vertices();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(Error::TooLarge { n, max: BRUTEFORCE_MAX_VERTICES });
    }
    let paths = ShortestPathCounts::compute(g);
    let mut bc = BcScores::zeros(n);
    for s in 0..n {
        for t in 0..n {
            if s == t || paths.dist(s, t).is_none() {
                continue;
            }
            let dst = paths.dist(s, t).unwrap();
            let total = paths.count(s, t) as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                if let (Some(a), Some(b)) = (paths.dist(s, v), paths.dist(v, t)) {
                    if a + b == dst {
                        let through = paths.count(s, v) * paths.count(v, t);
                        bc.0[v] += through as f64 / total;
                    }
                }
            }
        }
    }
    Ok(bc)
}

/// Dense all-pairs distances and shortest-path counts.
#[derive(Clone, Debug)]
pub struct ShortestPathCounts {
    n: usize,
    dist: Vec<Option<u32>>,
    count: Vec<u128>,
}

impl ShortestPathCounts {
    pub fn compute(g: &CsrGraph) -> Self {
        let n = g.num_vertices();
        let idx = |a: usize, b: usize| a * n + b;

        let mut arcs = vec![0u128; n * n];
        for u in 0..n {
            for &v in g.neighbors(u) {
                arcs[idx(u, v as usize)] += 1;
            }
        }

        let mut dist: Vec<Option<u32>> = vec![None; n * n];
        for u in 0..n {
            dist[idx(u, u)] = Some(0);
            for &v in g.neighbors(u) {
                if v as usize != u {
                    dist[idx(u, v as usize)] = Some(1);
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                let Some(ik) = dist[idx(i, k)] else { continue };
                for j in 0..n {
                    if let Some(kj) = dist[idx(k, j)] {
                        let via = ik + kj;
                        if dist[idx(i, j)].is_none_or(|d| via < d) {
                            dist[idx(i, j)] = Some(via);
                        }
                    }
                }
            }
        }

        let mut count = vec![0u128; n * n];
        for s in 0..n {
            // walks[t]: number of length-`len` walks s -> t, kept only where dist(s, t) = len
            let mut walks = vec![0u128; n];
            walks[s] = 1;
            count[idx(s, s)] = 1;
            let mut len = 0;
            loop {
                len += 1;
                let mut next = vec![0u128; n];
                let mut any = false;
                for u in 0..n {
                    if walks[u] == 0 {
                        continue;
                    }
                    for t in 0..n {
                        let mult = arcs[idx(u, t)];
                        if mult != 0 && dist[idx(s, t)] == Some(len) {
                            next[t] += walks[u] * mult;
                            any = true;
                        }
                    }
                }
                if !any {
                    break;
                }
                for t in 0..n {
                    if next[t] != 0 {
                        count[idx(s, t)] = next[t];
                    }
                }
                walks = next;
            }
        }

        Self { n, dist, count }
    }

    pub fn dist(&self, s: usize, t: usize) -> Option<u32> {
        self.dist[s * self.n + t]
    }

    /// Number of shortest `s -> t` paths, zero when unreachable.
    pub fn count(&self, s: usize, t: usize) -> u128 {
        self.count[s * self.n + t]
    }
}
