//! CSV results, JSON sidecars and plot-data files.
//!
//! Floats are written with 17 significant digits, which round-trips every
//! `f64` exactly. Each CSV gets a sidecar `<stem>.json` holding the tool
//! version, the reduced parameters, the diagnostics and the full
//! [`RunConfig`]; feeding the sidecar back as `--config` repeats the run.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use bec_probe_core::dynamics::{DecoherenceTrace, Diagnostics};
use bec_probe_core::sweeps::{Axis, Crossover, SweepRow};
use bec_probe_core::{Dimension, ReducedParams};
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv { path: path.to_path_buf(), source })
}

fn write_rows(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv_writer(path)?;
    let wrap = |source| Error::Csv { path: path.to_path_buf(), source };
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    w.flush().map_err(|source| Error::Write { path: path.to_path_buf(), source })
}

/// `t` in units of `ħ/E_τ`, `t_seconds` in seconds.
pub fn write_trace(path: &Path, trace: &DecoherenceTrace) -> Result<()> {
    let unit = trace.params.units.time();
    write_rows(
        path,
        &["t", "t_seconds", "gamma_factor", "decay_rate", "coherence"],
        trace.points.iter().map(|p| {
            vec![num(p.t), num(p.t * unit), num(p.gamma_factor), num(p.decay_rate), num(p.coherence)]
        }),
    )
}

fn axis_column(axis: Axis) -> &'static str {
    match axis {
        Axis::Temperature => "temperature_K",
        Axis::ScatteringLength => "a_boson_m",
    }
}

/// One record per row; failed rows keep `status=failed`, empty numeric
/// fields and the error message.
pub fn write_sweep(path: &Path, axis: Axis, rows: &[SweepRow]) -> Result<()> {
    write_rows(
        path,
        &["dim", axis_column(axis), "status", "n", "a", "b", "gamma_a", "gamma_b", "intervals", "open_at_horizon", "error"],
        rows.iter().map(|row| {
            let head = [row.dim.as_u32().to_string(), num(row.value)];
            let tail: [String; 9] = match &row.result {
                Ok(m) => [
                    "ok".into(),
                    num(m.n),
                    opt(m.interval.map(|i| i.a)),
                    opt(m.interval.map(|i| i.b)),
                    opt(m.gamma_a),
                    opt(m.gamma_b),
                    m.diagnostics.intervals_found.to_string(),
                    m.diagnostics.open_at_horizon.to_string(),
                    String::new(),
                ],
                Err(e) => {
                    let mut t: [String; 9] = Default::default();
                    t[0] = "failed".into();
                    t[8] = e.to_string();
                    t
                }
            };
            head.into_iter().chain(tail).collect()
        }),
    )
}

pub fn write_critical(path: &Path, axis: Axis, results: &[(Dimension, bec_probe_core::Result<Crossover>)]) -> Result<()> {
    write_rows(
        path,
        &["dim", "axis", "status", "estimate", "lo", "hi", "n_lo", "n_hi", "evaluations", "error"],
        results.iter().map(|(dim, r)| {
            let head = [dim.as_u32().to_string(), axis.name().to_string()];
            let tail: [String; 8] = match r {
                Ok(c) => [
                    "ok".into(),
                    num(c.estimate()),
                    num(c.lo),
                    num(c.hi),
                    num(c.n_lo),
                    num(c.n_hi),
                    c.evaluations.to_string(),
                    String::new(),
                ],
                Err(e) => {
                    let mut t: [String; 8] = Default::default();
                    t[0] = "failed".into();
                    t[7] = e.to_string();
                    t
                }
            };
            head.into_iter().chain(tail).collect()
        }),
    )
}

/// Everything needed to rerun a computation.
#[derive(Debug, Serialize)]
pub struct Sidecar<'a, D: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub params: Vec<ReducedParams>,
    pub diagnostics: D,
}

impl<'a, D: Serialize> Sidecar<'a, D> {
    pub fn new(command: &'a str, config: &'a RunConfig, params: Vec<ReducedParams>, diagnostics: D) -> Self {
        Sidecar { tool: TOOL, version: VERSION, command, config, params, diagnostics }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Write { path: path.to_path_buf(), source })?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|source| Error::Json { path: path.to_path_buf(), source })?;
    writeln!(w).and_then(|_| w.flush()).map_err(|source| Error::Write { path: path.to_path_buf(), source })
}

/// Per-row diagnostics as stored in a sweep sidecar.
#[derive(Debug, Serialize)]
pub struct RowDiagnostics {
    pub dim: Dimension,
    pub value: f64,
    pub status: &'static str,
    pub diagnostics: Option<Diagnostics>,
    pub error: Option<String>,
}

pub fn row_diagnostics(rows: &[SweepRow]) -> Vec<RowDiagnostics> {
    rows.iter()
        .map(|r| RowDiagnostics {
            dim: r.dim,
            value: r.value,
            status: if r.result.is_ok() { "ok" } else { "failed" },
            diagnostics: r.result.as_ref().ok().map(|m| m.diagnostics),
            error: r.result.as_ref().err().map(|e| e.to_string()),
        })
        .collect()
}

/// `<dir>/<stem>.csv` and `<dir>/<stem>.json`.
pub fn paths(dir: &Path, stem: &str) -> (PathBuf, PathBuf) {
    (dir.join(format!("{stem}.csv")), dir.join(format!("{stem}.json")))
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Write { path: dir.to_path_buf(), source })
}

fn write_dat(path: &Path, columns: &str, points: impl IntoIterator<Item = (f64, f64)>) -> Result<PathBuf> {
    let wrap = |source| Error::Write { path: path.to_path_buf(), source };
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    writeln!(w, "# {columns}").map_err(wrap)?;
    for (x, y) in points {
        writeln!(w, "{} {}", num(x), num(y)).map_err(wrap)?;
    }
    w.flush().map_err(wrap)?;
    Ok(path.to_path_buf())
}

/// Two-column whitespace files, one per curve, for generic plotting tools.
pub fn write_trace_plot_data(dir: &Path, stem: &str, trace: &DecoherenceTrace) -> Result<Vec<PathBuf>> {
    let curves: [(&str, fn(&bec_probe_core::dynamics::TracePoint) -> f64); 3] = [
        ("gamma_factor", |p| p.gamma_factor),
        ("decay_rate", |p| p.decay_rate),
        ("coherence", |p| p.coherence),
    ];
    curves
        .iter()
        .map(|(name, f)| {
            write_dat(
                &dir.join(format!("{stem}_{name}.dat")),
                &format!("t {name}"),
                trace.points.iter().map(|p| (p.t, f(p))),
            )
        })
        .collect()
}

/// One file per dimension with the successful rows of a sweep.
pub fn write_sweep_plot_data(dir: &Path, stem: &str, axis: Axis, rows: &[SweepRow]) -> Result<Vec<PathBuf>> {
    let mut dims: Vec<Dimension> = rows.iter().map(|r| r.dim).collect();
    dims.dedup();
    dims.iter()
        .map(|&dim| {
            write_dat(
                &dir.join(format!("{stem}_{dim}.dat")),
                &format!("{} n", axis_column(axis)),
                rows.iter()
                    .filter(|r| r.dim == dim)
                    .filter_map(|r| r.result.as_ref().ok().map(|m| (r.value, m.n))),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
