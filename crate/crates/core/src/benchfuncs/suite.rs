//! Suite files.
//!
//! A suite is a JSON array of entries:
//!
//! ```json
//! [
//!   {"name": "rastrigin", "dim": 10, "shift": [...], "bias": 800,
//!    "bounds": [-5.12, 5.12], "id": "rastrigin_f4", "rotation_file": "m.json"}
//! ]
//! ```
//!
//! Only `name` and `dim` are required. `shift` defaults to zeros, `bias` to 0,
//! `bounds` to the function's conventional interval (either `[lo, hi]` for all
//! coordinates or `{"lower": [...], "upper": [...]}`), `id` to `name`.
//! A rotation is given inline as `rotation` or as `rotation_file`, a JSON file
//! holding a `dim × dim` orthogonal matrix; relative paths resolve against the
//! suite file's directory. An empty file is an empty suite.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{BaseFunction, BenchError, BenchSpec};
use crate::problem::Bounds;

const DEFAULT_SUITE: &str = include_str!("../../data/default_suite.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteEntry {
    name: String,
    dim: usize,
    id: Option<String>,
    shift: Option<Vec<f64>>,
    bias: Option<f64>,
    bounds: Option<EntryBounds>,
    rotation: Option<Vec<Vec<f64>>>,
    rotation_file: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryBounds {
    Interval([f64; 2]),
    PerDim { lower: Vec<f64>, upper: Vec<f64> },
}

/// The shipped eight-function, 10-dimensional suite.
pub fn default_suite() -> Vec<BenchSpec> {
    parse_bench_suite(DEFAULT_SUITE, None).expect("shipped suite is valid")
}

pub fn load_bench_suite(path: impl AsRef<Path>) -> Result<Vec<BenchSpec>, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.to_path_buf(), source })?;
    parse_bench_suite(&text, path.parent())
}

pub fn parse_bench_suite(text: &str, base_dir: Option<&Path>) -> Result<Vec<BenchSpec>, BenchError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
    let mut seen = HashSet::new();
    let mut specs = Vec::with_capacity(raw.len());
    for (index, value) in raw.into_iter().enumerate() {
        let label = value.get("id").or_else(|| value.get("name")).and_then(|v| v.as_str()).unwrap_or("?").to_string();
        let invalid = |reason: String| BenchError::InvalidEntry { index, name: label.clone(), reason };
        let entry: SuiteEntry = serde_json::from_value(value).map_err(|e| invalid(e.to_string()))?;
        let spec = build_spec(entry, base_dir).map_err(invalid)?;
        if !seen.insert(spec.id.clone()) {
            return Err(invalid(format!("duplicate id `{}`", spec.id)));
        }
        specs.push(spec);
    }
    Ok(specs)
}

fn build_spec(entry: SuiteEntry, base_dir: Option<&Path>) -> Result<BenchSpec, String> {
    let function: BaseFunction = entry.name.parse().map_err(|e: BenchError| e.to_string())?;
    let d = entry.dim;
    if d < function.min_dim() {
        return Err(format!("dim {d} is below the minimum of {} for {function}", function.min_dim()));
    }
    let mut spec = BenchSpec::new(function, d).map_err(|e| e.to_string())?;
    if let Some(id) = entry.id {
        spec.id = id;
    }
    spec.bias = entry.bias.unwrap_or(0.0);
    if !spec.bias.is_finite() {
        return Err("bias must be finite".into());
    }
    if let Some(b) = entry.bounds {
        let bounds = match b {
            EntryBounds::Interval([lo, hi]) => Bounds::uniform(d, lo, hi),
            EntryBounds::PerDim { lower, upper } => Bounds::new(lower, upper),
        }
        .map_err(|e| format!("bounds: {e}"))?;
        if bounds.dim() != d {
            return Err(format!("bounds have length {}, expected {d}", bounds.dim()));
        }
        spec.bounds = bounds;
    }
    if let Some(shift) = entry.shift {
        if shift.len() != d {
            return Err(format!("shift has length {}, expected {d}", shift.len()));
        }
        if !spec.bounds.contains(&shift) {
            return Err("shift lies outside the bounds".into());
        }
        spec.shift = shift;
    }
    let rotation = match (entry.rotation, entry.rotation_file) {
        (Some(_), Some(_)) => return Err("give either `rotation` or `rotation_file`, not both".into()),
        (Some(m), None) => Some(m),
        (None, Some(file)) => {
            let path = match base_dir {
                Some(dir) if file.is_relative() => dir.join(&file),
                _ => file,
            };
            let text = std::fs::read_to_string(&path).map_err(|e| format!("rotation_file {}: {e}", path.display()))?;
            Some(serde_json::from_str(&text).map_err(|e| format!("rotation_file {}: {e}", path.display()))?)
        }
        (None, None) => None,
    };
    if let Some(m) = rotation {
        check_orthogonal(&m, d)?;
        spec.rotation = Some(m);
    }
    Ok(spec)
}

fn check_orthogonal(m: &[Vec<f64>], d: usize) -> Result<(), String> {
    if m.len() != d || m.iter().any(|row| row.len() != d) {
        return Err(format!("rotation must be {d} x {d}"));
    }
    for i in 0..d {
        for j in 0..d {
            let dot: f64 = (0..d).map(|k| m[k][i] * m[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            if (dot - target).abs() > 1e-8 {
                return Err(format!("rotation is not orthogonal (column {i} · column {j} = {dot})"));
            }
        }
    }
    Ok(())
}
