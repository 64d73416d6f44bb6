// SPDX-License-Identifier: Apache-2.0

//! Whitespace-separated data blocks for gnuplot.
//!
//! Each file holds one block per series group. Blocks are separated by two blank lines
//! so `index` can select them, lines starting with `#` describe the columns, and a
//! missing value is written as `NaN`.

use std::fmt::Write;

use super::{BenchRow, RunStatus};
use crate::strategy::{PredVariant, Strategy};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlotData {
    /// Speed-up against node count, one block per attachment parameter.
    pub graph_size: String,
    /// Speed-up against edge density, one block per node count.
    pub density: String,
    /// Work-shared mean time against chunk size, one block per graph and setting.
    pub chunk: String,
}

impl PlotData {
    /// `(file name, contents)` pairs.
    pub fn files(&self) -> [(&'static str, &str); 3] {
        [("graph_size.dat", &self.graph_size), ("density.dat", &self.density), ("chunk.dat", &self.chunk)]
    }
}

type GraphKey = (usize, usize, Option<usize>, Option<u64>);

fn graph_key(r: &BenchRow) -> GraphKey {
    (r.n, r.m, r.beta, r.seed)
}

/// One point per graph: its x value and the speed-up of each label.
struct Point {
    graph: GraphKey,
    x: f64,
    values: Vec<(String, f64)>,
}

fn speedup_points(rows: &[&BenchRow], baseline: Strategy, x: impl Fn(&BenchRow) -> f64) -> Vec<Point> {
    let mut points: Vec<Point> = Vec::new();
    for r in rows {
        let key = graph_key(r);
        if points.iter().any(|p| p.graph == key) {
            continue;
        }
        let same: Vec<&&BenchRow> = rows.iter().filter(|o| graph_key(o) == key).collect();
        let Some(base) = same.iter().find(|o| o.strategy == baseline && o.mean_ms > 0.0) else {
            continue;
        };
        let values = same.iter().filter(|o| o.mean_ms > 0.0).map(|o| (o.label(), base.mean_ms / o.mean_ms)).collect();
        points.push(Point { graph: key, x: x(r), values });
    }
    points
}

fn labels_of<'a>(points: impl IntoIterator<Item = &'a Point>) -> Vec<String> {
    let mut labels: Vec<String> = Vec::new();
    for p in points {
        for (l, _) in &p.values {
            if !labels.contains(l) {
                labels.push(l.clone());
            }
        }
    }
    labels
}

fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "NaN".into()
    }
}

fn write_block(out: &mut String, title: &str, x_name: &str, labels: &[String], rows: &[(f64, Vec<f64>)]) {
    if !out.is_empty() {
        out.push_str("\n\n");
    }
    let _ = writeln!(out, "# {title}");
    let _ = writeln!(out, "# {x_name} {}", labels.join(" "));
    for (x, ys) in rows {
        let ys: Vec<String> = ys.iter().map(|&y| number(y)).collect();
        let _ = writeln!(out, "{} {}", number(*x), ys.join(" "));
    }
}

fn speedup_blocks<G: PartialEq + Copy>(
    points: &[Point],
    group: impl Fn(&Point) -> G,
    title: impl Fn(G) -> String,
    x_name: &str,
) -> String {
    let labels = labels_of(points);
    let mut groups: Vec<G> = Vec::new();
    for p in points {
        if !groups.contains(&group(p)) {
            groups.push(group(p));
        }
    }
    let mut out = String::new();
    for g in groups {
        let mut members: Vec<&Point> = points.iter().filter(|p| group(p) == g).collect();
        members.sort_by(|a, b| a.x.total_cmp(&b.x));
        let rows: Vec<(f64, Vec<f64>)> = members
            .iter()
            .map(|p| {
                let ys =
                    labels.iter().map(|l| p.values.iter().find(|(k, _)| k == l).map_or(f64::NAN, |v| v.1)).collect();
                (p.x, ys)
            })
            .collect();
        write_block(&mut out, &title(g), x_name, &labels, &rows);
    }
    out
}

/// Builds the three data files from parsed CSV rows. Only `OK` rows contribute; the
/// speed-up baseline of each graph is its first `OK` row of the `baseline` strategy.
pub fn plot_data(rows: &[BenchRow], baseline: Strategy) -> PlotData {
    let ok: Vec<&BenchRow> = rows.iter().filter(|r| r.status == RunStatus::Ok).collect();

    let by_size = speedup_points(&ok, baseline, |r| r.n as f64);
    let graph_size = speedup_blocks(
        &by_size,
        |p| p.graph.2,
        |beta| match beta {
            Some(b) => format!("speed-up over {baseline} by node count, beta = {b}"),
            None => format!("speed-up over {baseline} by node count"),
        },
        "n",
    );

    let by_density = speedup_points(&ok, baseline, |r| r.d);
    let density =
        speedup_blocks(&by_density, |p| p.graph.0, |n| format!("speed-up over {baseline} by density, n = {n}"), "d");

    type ChunkKey = (usize, Option<usize>, Option<u64>, usize, PredVariant);
    let shared: Vec<&BenchRow> = ok.iter().copied().filter(|r| r.strategy == Strategy::WorkShared).collect();
    let mut groups: Vec<ChunkKey> = Vec::new();
    for r in &shared {
        let key = (r.n, r.beta, r.seed, r.workers, r.pred_variant);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    let mut chunk = String::new();
    let labels = ["mean_ms".to_string()];
    for (n, beta, seed, workers, pred) in groups {
        let mut pts: Vec<(f64, Vec<f64>)> = shared
            .iter()
            .filter(|r| (r.n, r.beta, r.seed, r.workers, r.pred_variant) == (n, beta, seed, workers, pred))
            .map(|r| (r.chunk as f64, vec![r.mean_ms]))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let beta = beta.map_or("-".into(), |b| b.to_string());
        let seed = seed.map_or("-".into(), |s| s.to_string());
        let title = format!(
            "shared time by chunk size, n = {n}, beta = {beta}, seed = {seed}, workers = {workers}, pred = {pred}"
        );
        write_block(&mut chunk, &title, "chunk", &labels, &pts);
    }

    PlotData { graph_size, density, chunk }
}
