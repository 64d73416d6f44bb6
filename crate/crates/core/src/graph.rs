// SPDX-License-Identifier: Apache-2.0

//! Directed graph representations shared by every strategy.
//!
//! [`EdgeListGraph`] stores arcs as two parallel arrays (`sources[i] -> targets[i]`),
//! [`CsrGraph`] stores out-neighbour lists behind an `n + 1` entry offset array.
//! Both are immutable once built and can be read concurrently without locking.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Vertex identifier. Four bytes, like the integer arrays the memory model accounts for.
pub type VertexId = u32;

/// Directed multigraph as parallel source/target arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListGraph {
    n: usize,
    sources: Vec<VertexId>,
    targets: Vec<VertexId>,
}

impl EdgeListGraph {
    /// Builds a graph from arcs, checking every endpoint against `n`.
    pub fn new(n: usize, sources: Vec<VertexId>, targets: Vec<VertexId>) -> Result<Self> {
        if sources.len() != targets.len() {
            return Err(Error::InvalidParams(format!(
                "sources has {} entries but targets has {}",
                sources.len(),
                targets.len()
            )));
        }
        if n > VertexId::MAX as usize {
            return Err(Error::TooLarge { n, max: VertexId::MAX as usize });
        }
        for (i, (&u, &v)) in sources.iter().zip(&targets).enumerate() {
            for id in [u, v] {
                if id as usize >= n {
                    return Err(Error::VertexOutOfRange { line: i + 1, id: id.into(), n });
                }
            }
        }
        Ok(Self { n, sources, targets })
    }

    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let (sources, targets) = arcs.iter().copied().unzip();
        Self::new(n, sources, targets)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn arcs(&self) -> impl ExactSizeIterator<Item = (VertexId, VertexId)> + '_ {
        self.sources.iter().copied().zip(self.targets.iter().copied())
    }

    /// Arcs sorted lexicographically; two graphs with equal sorted arcs hold the same multiset.
    pub fn sorted_arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.sort_unstable();
        arcs
    }

    /// Edge density `m / n`.
    pub fn edge_density(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.num_arcs() as f64 / self.n as f64)
    }
}

/// Parses the edge-list text format: optional `#` comments and blank lines, a
/// header `n m`, then exactly `m` lines `u v`.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<EdgeListGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut sources = Vec::new();
    let mut targets = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        match header {
            None => {
                if text.is_empty() || text.starts_with('#') {
                    continue;
                }
                let (n, m) = parse_pair(text, lineno)?;
                let n = usize::try_from(n).map_err(|_| parse_err(lineno, "vertex count too large"))?;
                if n > VertexId::MAX as usize {
                    return Err(Error::TooLarge { n, max: VertexId::MAX as usize });
                }
                let m = usize::try_from(m).map_err(|_| parse_err(lineno, "arc count too large"))?;
                sources.reserve(m.min(1 << 24));
                targets.reserve(m.min(1 << 24));
                header = Some((n, m));
            }
            Some((n, m)) => {
                if sources.len() == m {
                    if text.is_empty() {
                        continue;
                    }
                    return Err(Error::EdgeCountMismatch { declared: m, found: m + 1 });
                }
                let (u, v) = parse_pair(text, lineno)?;
                for id in [u, v] {
                    if id >= n as u64 {
                        return Err(Error::VertexOutOfRange { line: lineno, id, n });
                    }
                }
                sources.push(u as VertexId);
                targets.push(v as VertexId);
            }
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(1, "missing header line \"n m\""))?;
    if sources.len() != m {
        return Err(Error::EdgeCountMismatch { declared: m, found: sources.len() });
    }
    Ok(EdgeListGraph { n, sources, targets })
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse { line, msg: msg.to_owned() }
}

fn parse_pair(text: &str, line: usize) -> Result<(u64, u64)> {
    let mut fields = text.split_whitespace();
    let mut next = || -> Result<u64> {
        let field = fields.next().ok_or_else(|| parse_err(line, "expected two integers"))?;
        field.parse::<u64>().map_err(|_| parse_err(line, &format!("not a non-negative integer: {field:?}")))
    };
    let a = next()?;
    let b = next()?;
    if fields.next().is_some() {
        return Err(parse_err(line, "expected exactly two integers"));
    }
    Ok((a, b))
}

/// Writes `g` in the same format [`load_edge_list`] reads.
pub fn write_edge_list<W: Write>(g: &EdgeListGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.n, g.num_arcs())?;
    for (u, v) in g.arcs() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

/// Compressed sparse row form: out-neighbours of `u` are
/// `targets[offsets[u]..offsets[u + 1]]`, each list sorted by target id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsrGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl CsrGraph {
    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_arcs(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[VertexId] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn sorted_arcs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.num_vertices()).flat_map(|u| self.neighbors(u).iter().map(move |&v| (u as VertexId, v))).collect()
    }
}

/// Counting-sort conversion; duplicate arcs are preserved.
pub fn build_csr(g: &EdgeListGraph) -> CsrGraph {
    let n = g.num_vertices();
    let mut offsets = vec![0usize; n + 1];
    for &u in g.sources() {
        offsets[u as usize + 1] += 1;
    }
    for u in 0..n {
        offsets[u + 1] += offsets[u];
    }
    let mut cursor = offsets.clone();
    let mut targets = vec![0 as VertexId; g.num_arcs()];
    for (u, v) in g.arcs() {
        let slot = &mut cursor[u as usize];
        targets[*slot] = v;
        *slot += 1;
    }
    for u in 0..n {
        targets[offsets[u]..offsets[u + 1]].sort_unstable();
    }
    CsrGraph { offsets, targets }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Finding {
    SelfLoop { vertex: VertexId },
    DuplicateArc { source: VertexId, target: VertexId, copies: usize },
    IsolatedVertex { vertex: VertexId },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::SelfLoop { vertex } => write!(f, "self-loop at {vertex}"),
            Finding::DuplicateArc { source, target, copies } => {
                write!(f, "arc {source} -> {target} appears {copies} times")
            }
            Finding::IsolatedVertex { vertex } => write!(f, "isolated vertex {vertex}"),
        }
    }
}

/// Reports self-loops, duplicate arcs and isolated vertices. An empty result means clean.
pub fn validate(g: &EdgeListGraph) -> Vec<Finding> {
    let mut findings = Vec::new();
    let mut touched = vec![false; g.num_vertices()];
    let mut seen_loops = HashSet::new();
    for (u, v) in g.arcs() {
        touched[u as usize] = true;
        touched[v as usize] = true;
        if u == v && seen_loops.insert(u) {
            findings.push(Finding::SelfLoop { vertex: u });
        }
    }
    let arcs = g.sorted_arcs();
    for run in arcs.chunk_by(|a, b| a == b) {
        if run.len() > 1 {
            let (source, target) = run[0];
            findings.push(Finding::DuplicateArc { source, target, copies: run.len() });
        }
    }
    findings.extend(
        touched.iter().enumerate().filter(|(_, &t)| !t).map(|(v, _)| Finding::IsolatedVertex { vertex: v as VertexId }),
    );
    findings.sort();
    findings
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeStats {
    pub out_degree: Vec<usize>,
    /// `histogram[k]` is the number of vertices with out-degree `k`.
    pub histogram: Vec<usize>,
    pub max: usize,
    pub mean: f64,
    /// Population variance.
    pub variance: f64,
}

pub fn degree_stats(g: &CsrGraph) -> DegreeStats {
    let n = g.num_vertices();
    let out_degree: Vec<usize> = (0..n).map(|u| g.out_degree(u)).collect();
    let max = out_degree.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0usize; max + 1];
    for &d in &out_degree {
        histogram[d] += 1;
    }
    let (mean, variance) = if n == 0 {
        (0.0, 0.0)
    } else {
        let mean = g.num_arcs() as f64 / n as f64;
        let var = out_degree.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / n as f64;
        (mean, var)
    };
    DegreeStats { out_degree, histogram, max, mean, variance }
}

/// Both representations of one input, built once so every strategy sees the same arcs.
///
/// The edge list is stored grouped by source in CSR order (stable within a source), so
/// arc scans touch each source's state in one run.
#[derive(Clone, Debug)]
pub struct GraphInputs {
    pub edges: EdgeListGraph,
    pub csr: CsrGraph,
}

impl GraphInputs {
    pub fn new(edges: EdgeListGraph) -> Self {
        let csr = build_csr(&edges);
        let (sources, targets) = csr.sorted_arcs().into_iter().unzip();
        let edges = EdgeListGraph { n: edges.num_vertices(), sources, targets };
        Self { edges, csr }
    }

    pub fn num_vertices(&self) -> usize {
        self.edges.num_vertices()
    }

    pub fn num_arcs(&self) -> usize {
        self.edges.num_arcs()
    }
}
