// SPDX-License-Identifier: Apache-2.0

//! Cross-checks every strategy against the sequential oracle on one graph.

use std::fmt;

use crate::brandes::{bc_bruteforce, bc_sequential, bfs_forward, BRUTEFORCE_MAX_VERTICES};
use crate::error::Result;
use crate::graph::GraphInputs;
use crate::strategy::{run_strategy, Strategy, StrategyConfig};

/// Graphs up to this size also get per-source distance and path-count checks.
pub const TRACE_MAX_VERTICES: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub trace_max_vertices: usize,
    /// Negative control: add 1.0 to the first score of every strategy run.
    pub corrupt_scores: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { trace_max_vertices: TRACE_MAX_VERTICES, corrupt_scores: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    /// Largest relative error, or the number of mismatched entries for exact checks.
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} error={:.3e} tolerance={:.0e}", self.name, self.error, self.tolerance)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: String, error: f64, tolerance: f64, detail: Option<String>) {
        let passed = detail.is_none() && error <= tolerance;
        self.checks.push(CheckOutcome { name, error, tolerance, passed, detail });
    }

    fn fail(&mut self, name: String, detail: String) {
        self.checks.push(CheckOutcome {
            name,
            error: f64::INFINITY,
            tolerance: 0.0,
            passed: false,
            detail: Some(detail),
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Errors only if the oracle itself cannot run (for example on path-count overflow);
/// strategy errors become failed checks.
pub fn verify_graph(g: &GraphInputs, configs: &[StrategyConfig], opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let oracle = bc_sequential(&g.csr)?;
    let n = g.num_vertices();

    if n <= BRUTEFORCE_MAX_VERTICES {
        let brute = bc_bruteforce(&g.csr)?;
        let err = oracle.max_relative_error(&brute);
        report.push("seq vs bruteforce".into(), err, Strategy::Sequential.tolerance(), None);
    }

    for cfg in configs {
        let label = cfg.label();
        let trace = cfg.strategy != Strategy::Sequential && n <= opts.trace_max_vertices;
        let run = match run_strategy(g, cfg, trace) {
            Ok(run) => run,
            Err(e) => {
                report.fail(format!("{label} scores"), e.to_string());
                continue;
            }
        };
        let mut scores = run.scores;
        if opts.corrupt_scores && !scores.is_empty() {
            scores.0[0] += 1.0;
        }
        let err = scores.max_relative_error(&oracle);
        report.push(format!("{label} scores"), err, cfg.strategy.tolerance(), None);

        if let Some(traces) = run.trace {
            let mut mismatches = 0usize;
            for (s, t) in traces.iter().enumerate() {
                let expected = bfs_forward(&g.csr, s)?;
                mismatches += expected.dist.iter().zip(&t.dist).filter(|(a, b)| a != b).count();
                mismatches += expected.sigma.iter().zip(&t.sigma).filter(|(a, b)| a != b).count();
            }
            let detail = (traces.len() != n).then(|| format!("{} of {n} sources traced", traces.len()));
            report.push(format!("{label} distances and path counts"), mismatches as f64, 0.0, detail);
        }
    }
    Ok(report)
}
