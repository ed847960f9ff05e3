//! Serialization of trajectories, basin maps and reports, and atomic writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use entlyap_core::dynamics::TrajectoryRecord;
use entlyap_core::harness::{BasinPoint, TerminalClass};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Data-file format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// A file to be written under the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Twelve significant digits, shortest form, `.` decimal separator.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

fn population_labels(nqubits: usize) -> Vec<String> {
    (0..1usize << nqubits).map(|i| format!("pop_{:0width$b}", i, width = nqubits)).collect()
}

/// Header `t,V,E,u_1..u_m,pop_..` and one row per recorded sample.
pub fn trajectory_csv(record: &TrajectoryRecord, controls: usize) -> String {
    let nqubits = record.final_state.nqubits();
    let mut header: Vec<String> = vec!["t".into(), "V".into(), "E".into()];
    header.extend((1..=controls).map(|k| format!("u_{k}")));
    header.extend(population_labels(nqubits));
    let mut out = header.join(",");
    out.push('\n');
    for s in &record.samples {
        let mut row: Vec<String> = vec![format_number(s.t), format_number(s.signal.v), format_number(s.signal.e)];
        row.extend((0..controls).map(|k| format_number(s.signal.u.get(k).copied().unwrap_or(0.0))));
        row.extend(s.rho.populations().into_iter().map(format_number));
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn trajectory_json(record: &TrajectoryRecord, controls: usize) -> String {
    let samples: Vec<Value> = record
        .samples
        .iter()
        .map(|s| {
            let u: Vec<f64> = (0..controls).map(|k| s.signal.u.get(k).copied().unwrap_or(0.0)).collect();
            json!({ "t": s.t, "V": s.signal.v, "E": s.signal.e, "u": u, "populations": s.rho.populations() })
        })
        .collect();
    let labels = population_labels(record.final_state.nqubits());
    to_json(&json!({ "populationLabels": labels, "samples": samples }))
}

pub fn trajectory(record: &TrajectoryRecord, controls: usize, format: Format) -> String {
    match format {
        Format::Csv => trajectory_csv(record, controls),
        Format::Json => trajectory_json(record, controls),
    }
}

pub const BASIN_HEADER: &str = "b_alpha,b_beta,b_gamma,b_delta,class";

pub fn basin_csv(points: &[BasinPoint]) -> String {
    let mut out = String::from(BASIN_HEADER);
    out.push('\n');
    for p in points {
        let w: Vec<String> = p.coefficients.iter().map(|&x| format_number(x)).collect();
        let _ = writeln!(out, "{},{}", w.join(","), p.class.label());
    }
    out
}

pub fn basin_json(points: &[BasinPoint]) -> String {
    let rows: Vec<Value> =
        points.iter().map(|p| json!({ "weights": p.coefficients, "class": p.class.label() })).collect();
    to_json(&Value::Array(rows))
}

/// Reads [`basin_csv`] output back.
pub fn parse_basin_csv(text: &str) -> CliResult<Vec<BasinPoint>> {
    let mut lines = text.lines();
    if lines.next() != Some(BASIN_HEADER) {
        return Err(CliError::Config("basin CSV has an unexpected header".into()));
    }
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            let bad = || CliError::Config(format!("malformed basin row {line:?}"));
            if fields.len() != 5 {
                return Err(bad());
            }
            let mut w = [0.0; 4];
            for (k, f) in fields[..4].iter().enumerate() {
                w[k] = f.parse().map_err(|_| bad())?;
            }
            let class = TerminalClass::from_label(fields[4]).ok_or_else(bad)?;
            Ok(BasinPoint { coefficients: w, class })
        })
        .collect()
}

/// Pretty JSON with a trailing newline.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes every artifact via a temporary file in `dir` and a rename, so a
/// reader never sees a partial file.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> CliResult<Vec<PathBuf>> {
    let io = |what: &str, p: &Path, e: std::io::Error| CliError::Io(format!("{what} {}: {e}", p.display()));
    std::fs::create_dir_all(dir).map_err(|e| io("cannot create", dir, e))?;
    let mut written = Vec::with_capacity(artifacts.len());
    for a in artifacts {
        let path = dir.join(&a.name);
        let mut tmp =
            tempfile::NamedTempFile::new_in(dir).map_err(|e| io("cannot create a temporary file in", dir, e))?;
        tmp.write_all(a.contents.as_bytes()).map_err(|e| io("cannot write", &path, e))?;
        tmp.as_file().sync_all().map_err(|e| io("cannot sync", &path, e))?;
        tmp.persist(&path).map_err(|e| io("cannot rename into", &path, e.error))?;
        written.push(path);
    }
    Ok(written)
}
