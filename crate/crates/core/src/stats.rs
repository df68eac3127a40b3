//! Per-cell summaries and two-sided Wilcoxon rank-sum p-values.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use thiserror::Error;

/// Pooled sizes up to this use exact enumeration.
pub const EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("need at least {needed} values, got {actual}")]
    TooFewValues { needed: usize, actual: usize },

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("problem `{problem}` has no `{reference}` cell")]
    MissingReference { problem: String, reference: String },

    #[error("exact enumeration over {0} pooled values is too large")]
    TooLargeForExact(usize),

    #[error("duplicate cell ({problem}, {algorithm})")]
    DuplicateCell { problem: String, algorithm: String },
}

/// Final best fitness of each trial of one algorithm on one problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSet {
    pub algorithm: String,
    pub problem: String,
    pub values: Vec<f64>,
}

impl TrialSet {
    pub fn new(algorithm: impl Into<String>, problem: impl Into<String>, values: Vec<f64>) -> Result<Self, StatsError> {
        check_values(&values, 2)?;
        Ok(Self { algorithm: algorithm.into(), problem: problem.into(), values })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub avg: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

fn check_values(values: &[f64], needed: usize) -> Result<(), StatsError> {
    if values.len() < needed {
        return Err(StatsError::TooFewValues { needed, actual: values.len() });
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(StatsError::NonFinite { index, value: values[index] }),
        None => Ok(()),
    }
}

/// Mean, sample standard deviation, and extrema. Independent of input order.
pub fn summarize(values: &[f64]) -> Result<Summary, StatsError> {
    check_values(values, 2)?;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let avg = sorted.iter().sum::<f64>() / n;
    let mut deviations: Vec<f64> = sorted.iter().map(|v| (v - avg) * (v - avg)).collect();
    deviations.sort_by(f64::total_cmp);
    let std = (deviations.iter().sum::<f64>() / (n - 1.0)).sqrt();
    Ok(Summary { avg, std, min: sorted[0], max: sorted[sorted.len() - 1] })
}

/// Midranks (1-based) of `values`, ties sharing their average rank, plus the
/// tie correction term `Σ(t³ − t)`.
fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        let t = (end - start) as f64;
        ties += t * t * t - t;
        start = end;
    }
    (ranks, ties)
}

/// Two-sided Wilcoxon rank-sum p-value.
///
/// Exact permutation distribution of the midrank sum when the pooled size is
/// at most [`EXACT_LIMIT`], otherwise [`ranksum_p_normal`].
pub fn ranksum_p(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.len() + b.len() <= EXACT_LIMIT {
        ranksum_p_exact(a, b)
    } else {
        ranksum_p_normal(a, b)
    }
}

pub fn ranksum_p_exact(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check_values(a, 1)?;
    check_values(b, 1)?;
    let n = a.len() + b.len();
    if n > 24 {
        return Err(StatsError::TooLargeForExact(n));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, _) = midranks(&pooled);
    let expected = a.len() as f64 * (n as f64 + 1.0) / 2.0;
    let observed: f64 = ranks[..a.len()].iter().sum();
    let threshold = (observed - expected).abs() - 1e-9;

    let (mut extreme, mut total) = (0u64, 0u64);
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        total += 1;
        let w: f64 = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| ranks[k]).sum();
        if (w - expected).abs() >= threshold {
            extreme += 1;
        }
    }
    Ok(extreme as f64 / total as f64)
}

/// Normal approximation with tie-corrected variance and a 0.5 continuity correction.
pub fn ranksum_p_normal(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check_values(a, 1)?;
    check_values(b, 1)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let n = na + nb;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let observed: f64 = ranks[..a.len()].iter().sum();
    let expected = na * (n + 1.0) / 2.0;
    let variance = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if !(variance > 0.0) {
        return Ok(1.0);
    }
    let z = ((observed - expected).abs() - 0.5).max(0.0) / variance.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).clamp(f64::MIN_POSITIVE, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub problem: String,
    pub algorithm: String,
    pub avg: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// Absent for the reference algorithm itself.
    pub p_vs_reference: Option<f64>,
}

/// One row per (problem, algorithm) cell, in order of first appearance.
pub fn comparison_table(cells: &[TrialSet], reference: &str) -> Result<Vec<ComparisonRow>, StatsError> {
    let mut problems: Vec<&str> = Vec::new();
    for c in cells {
        if !problems.contains(&c.problem.as_str()) {
            problems.push(&c.problem);
        }
    }
    let mut rows = Vec::with_capacity(cells.len());
    for problem in problems {
        let in_problem: Vec<&TrialSet> = cells.iter().filter(|c| c.problem == problem).collect();
        for (i, c) in in_problem.iter().enumerate() {
            if in_problem[..i].iter().any(|d| d.algorithm == c.algorithm) {
                return Err(StatsError::DuplicateCell { problem: problem.into(), algorithm: c.algorithm.clone() });
            }
        }
        let reference_cell = in_problem
            .iter()
            .find(|c| c.algorithm == reference)
            .ok_or_else(|| StatsError::MissingReference { problem: problem.into(), reference: reference.into() })?;
        for c in in_problem.iter() {
            let s = summarize(&c.values)?;
            let p = if c.algorithm == reference { None } else { Some(ranksum_p(&c.values, &reference_cell.values)?) };
            rows.push(ComparisonRow {
                problem: problem.into(),
                algorithm: c.algorithm.clone(),
                avg: s.avg,
                std: s.std,
                min: s.min,
                max: s.max,
                p_vs_reference: p,
            });
        }
    }
    Ok(rows)
}

/// CSV with header `problem,algorithm,avg,std,min,max,p_vs_reference`.
pub fn table_to_csv(rows: &[ComparisonRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["problem", "algorithm", "avg", "std", "min", "max", "p_vs_reference"]).expect("in-memory write");
    for r in rows {
        let p = r.p_vs_reference.map(|p| p.to_string()).unwrap_or_default();
        w.write_record([r.problem.clone(), r.algorithm.clone(), r.avg.to_string(), r.std.to_string(), r.min.to_string(), r.max.to_string(), p])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn table_to_json(rows: &[ComparisonRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
