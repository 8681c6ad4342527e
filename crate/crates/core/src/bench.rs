//! Wall-clock scaling measurements for the two projection routes.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::exec::Execution;
use crate::generator::{generate, GenError, GenSpec, Model};
use crate::graph::BipartiteGraph;
use crate::projection::{project_matrix_with, project_sparse_with, Side};

/// Header of the CSV written by [`to_csv`].
pub const CSV_HEADER: &str = "algorithm,n1,n2,m,reps,median_ns,edges_out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    MatrixScan,
    SparseWedge,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::MatrixScan => "MatrixScan",
            Algorithm::SparseWedge => "SparseWedge",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n1: usize,
    pub n2: usize,
    pub m: usize,
    /// Median over `repetitions` runs.
    pub wall_time: Duration,
    pub peak_edges_out: usize,
    pub repetitions: usize,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.algorithm,
            self.n1,
            self.n2,
            self.m,
            self.repetitions,
            self.wall_time.as_nanos(),
            self.peak_edges_out
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Runs `f` `reps` times back to back and returns the median duration and
/// the last result.
pub fn time_median<R>(reps: usize, mut f: impl FnMut() -> R) -> (Duration, R) {
    assert!(reps >= 1);
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let r = black_box(f());
        times.push(start.elapsed());
        last = Some(r);
    }
    times.sort_unstable();
    (times[reps / 2], last.expect("reps >= 1"))
}

/// Times one projection route on `g`. The matrix conversion happens outside
/// the timed region.
pub fn measure(g: &BipartiteGraph, algorithm: Algorithm, reps: usize, exec: Execution) -> BenchRecord {
    let (wall_time, edges_out) = match algorithm {
        Algorithm::MatrixScan => {
            let matrix = g.to_biadjacency();
            time_median(reps, || project_matrix_with(&matrix, exec).edge_count())
        }
        Algorithm::SparseWedge => {
            time_median(reps, || project_sparse_with(g, Side::ProjectU, exec).edge_count())
        }
    };
    BenchRecord {
        algorithm,
        n1: g.n1(),
        n2: g.n2(),
        m: g.edge_count(),
        wall_time,
        peak_edges_out: edges_out,
        repetitions: reps,
    }
}

/// How the benchmark graph for a size is built.
#[derive(Debug, Clone, PartialEq)]
pub enum Workload {
    Model(Model),
    /// `FixedM` with `m = round(factor · (n1 + n2))`, capped at `n1·n2`.
    EdgesPerVertex(f64),
}

impl Workload {
    pub fn spec(&self, n1: usize, n2: usize, seed: u64) -> GenSpec {
        let model = match self {
            Workload::Model(m) => m.clone(),
            Workload::EdgesPerVertex(f) => {
                let m = (f * (n1 + n2) as f64).round() as usize;
                Model::FixedM { m: m.min(n1 * n2) }
            }
        };
        GenSpec::new(n1, n2, model, seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<(usize, usize)>,
    pub workload: Workload,
    pub algorithms: Vec<Algorithm>,
    pub reps: usize,
    pub seed: u64,
    pub exec: Execution,
}

/// One result per size: the records for every algorithm, or the generator
/// error for that size.
pub type BenchRow = Result<Vec<BenchRecord>, (usize, usize, GenError)>;

pub fn run(config: &BenchConfig) -> Vec<BenchRow> {
    config
        .sizes
        .iter()
        .map(|&(n1, n2)| {
            let g = generate(&config.workload.spec(n1, n2, config.seed)).map_err(|e| (n1, n2, e))?;
            Ok(config.algorithms.iter().map(|&a| measure(&g, a, config.reps, config.exec)).collect())
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`. `None` with fewer than two
/// distinct `x` values.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// For each `n2` with at least two `n1` values, the log-log slope of
/// MatrixScan median time against `n1`.
pub fn matrix_scan_slopes(records: &[BenchRecord]) -> Vec<(usize, f64)> {
    let mut n2s: Vec<usize> = records
        .iter()
        .filter(|r| r.algorithm == Algorithm::MatrixScan)
        .map(|r| r.n2)
        .collect();
    n2s.sort_unstable();
    n2s.dedup();
    n2s.into_iter()
        .filter_map(|n2| {
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.algorithm == Algorithm::MatrixScan && r.n2 == n2)
                .map(|r| (r.n1 as f64, r.wall_time.as_secs_f64()))
                .collect();
            loglog_slope(&pts).map(|s| (n2, s))
        })
        .collect()
}

/// Bytes held by a dense `n × n` 0/1 adjacency matrix versus a sorted pair
/// list of `edges` entries.
pub fn output_memory(n: usize, edges: usize) -> (usize, usize) {
    (n * n, edges * 2 * std::mem::size_of::<usize>())
}
