// SPDX-License-Identifier: Apache-2.0

//! Global-memory footprints of the three GPU betweenness designs.
//!
//! These model the original GPU implementations (4-byte `int`/`float`, 1-byte `bool`),
//! not the data structures of this crate. For `n` vertices and `m` directed edges:
//!
//! | design | input       | output | distance | paths  | dependency | predecessor | total              |
//! |--------|-------------|--------|----------|--------|------------|-------------|--------------------|
//! | jia    | `8m`        | `4n`   | `4n^2`   | `4n^2` | `4n^2`     | `4n^2`      | `16n^2 + 8m + 4n`  |
//! | sriram | `4m + 4n`   | `4n`   | `4n^2`   | `4n^2` | `4n^2`     | `4n^2`      | `16n^2 + 8n + 4m`  |
//! | shi    | `8m`        | `4n`   | `4n`     | `4n`   | `4n`       | `n^2`       | `n^2 + 8m + 16n`   |
//!
//! At `n = 20,000`, `m = 2,000,000` the jia total is 6,416,080,000 bytes (5.98 GiB).
//! Larger figures sometimes quoted for that input do not follow from the itemization
//! above; the itemized value is what is reported here.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Edge list input, one replicated workspace per source.
    Jia,
    /// Adjacency list input, one replicated workspace per source.
    Sriram,
    /// Edge list input, a single shared workspace with an `n x n` byte predecessor matrix.
    Shi,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Jia, Algorithm::Sriram, Algorithm::Shi];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Jia => "jia",
            Algorithm::Sriram => "sriram",
            Algorithm::Shi => "shi",
        }
    }

    pub fn footprint(self, n: u64, m: u64) -> Result<FootprintBreakdown> {
        match self {
            Algorithm::Jia => footprint_jia(n, m),
            Algorithm::Sriram => footprint_sriram(n, m),
            Algorithm::Shi => footprint_shi(n, m),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jia" => Ok(Algorithm::Jia),
            "sriram" => Ok(Algorithm::Sriram),
            "shi" => Ok(Algorithm::Shi),
            other => Err(Error::InvalidParams(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Byte counts per data structure; `total_bytes` is their sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FootprintBreakdown {
    pub input_bytes: u128,
    pub output_bytes: u128,
    pub aux_distance: u128,
    pub aux_sigma: u128,
    pub aux_delta: u128,
    pub aux_predecessor: u128,
    pub total_bytes: u128,
}

impl FootprintBreakdown {
    fn from_parts(parts: [Option<u128>; 6]) -> Result<Self> {
        let overflow = || Error::InvalidParams("byte count exceeds 2^128".into());
        let [input, output, dist, sigma, delta, pred] = parts.map(|p| p.ok_or_else(overflow));
        let (input, output, dist, sigma, delta, pred) = (input?, output?, dist?, sigma?, delta?, pred?);
        let total =
            [output, dist, sigma, delta, pred].into_iter().try_fold(input, u128::checked_add).ok_or_else(overflow)?;
        Ok(Self {
            input_bytes: input,
            output_bytes: output,
            aux_distance: dist,
            aux_sigma: sigma,
            aux_delta: delta,
            aux_predecessor: pred,
            total_bytes: total,
        })
    }

    pub fn parts(&self) -> [(&'static str, u128); 6] {
        [
            ("input", self.input_bytes),
            ("output", self.output_bytes),
            ("distance", self.aux_distance),
            ("path counts", self.aux_sigma),
            ("dependency", self.aux_delta),
            ("predecessor", self.aux_predecessor),
        ]
    }
}

fn mul(k: u128, x: u64) -> Option<u128> {
    k.checked_mul(u128::from(x))
}

fn sq(k: u128, n: u64) -> Option<u128> {
    mul(k, n)?.checked_mul(u128::from(n))
}

pub fn footprint_jia(n: u64, m: u64) -> Result<FootprintBreakdown> {
    FootprintBreakdown::from_parts([mul(8, m), mul(4, n), sq(4, n), sq(4, n), sq(4, n), sq(4, n)])
}

pub fn footprint_sriram(n: u64, m: u64) -> Result<FootprintBreakdown> {
    let input = mul(4, m).and_then(|a| a.checked_add(mul(4, n)?));
    FootprintBreakdown::from_parts([input, mul(4, n), sq(4, n), sq(4, n), sq(4, n), sq(4, n)])
}

pub fn footprint_shi(n: u64, m: u64) -> Result<FootprintBreakdown> {
    FootprintBreakdown::from_parts([mul(8, m), mul(4, n), mul(4, n), mul(4, n), mul(4, n), sq(1, n)])
}

/// Arc count `ceil(d * n)` used by the feasibility search.
pub fn arcs_for_density(d: f64, n: u64) -> u64 {
    (d * n as f64).ceil() as u64
}

/// Largest `n` whose footprint with `m = ceil(d * n)` fits in `budget_bytes`.
///
/// Starts from the root of the quadratic and settles it by direct evaluation, so the
/// result satisfies `footprint(n) <= budget < footprint(n + 1)`.
pub fn max_feasible_nodes(algorithm: Algorithm, d: f64, budget_bytes: u128) -> Result<u64> {
    if !d.is_finite() || d < 0.0 {
        return Err(Error::InvalidParams(format!("edge density must be finite and >= 0, got {d}")));
    }
    let fits = |n: u64| -> bool {
        algorithm.footprint(n, arcs_for_density(d, n)).is_ok_and(|f| f.total_bytes <= budget_bytes)
    };
    let (a, b) = match algorithm {
        Algorithm::Jia => (16.0, 4.0 + 8.0 * d),
        Algorithm::Sriram => (16.0, 8.0 + 4.0 * d),
        Algorithm::Shi => (1.0, 16.0 + 8.0 * d),
    };
    let budget = budget_bytes as f64;
    let root = (-b + (b * b + 4.0 * a * budget).sqrt()) / (2.0 * a);
    let mut n = if root.is_finite() && root > 0.0 { root.floor() as u64 } else { 0 };
    while n > 0 && !fits(n) {
        n -= 1;
    }
    while fits(n + 1) {
        n += 1;
    }
    Ok(n)
}

pub fn to_gb(bytes: u128) -> f64 {
    bytes as f64 / 1e9
}

pub fn to_gib(bytes: u128) -> f64 {
    bytes as f64 / (1u64 << 30) as f64
}

pub fn to_mib(bytes: u128) -> f64 {
    bytes as f64 / (1u64 << 20) as f64
}
