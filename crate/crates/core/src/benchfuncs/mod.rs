//! Shifted, optionally rotated, biased analytic test functions.
//!
//! A [`BenchSpec`] evaluates `f_base(M·(x − o)) + b`, where `M` is an optional
//! orthogonal matrix (identity when absent). Suites are JSON files; see
//! [`suite`] for the schema.

mod functions;
pub mod suite;

use std::path::PathBuf;

use thiserror::Error;

pub use functions::BaseFunction;
pub use suite::{default_suite, load_bench_suite, parse_bench_suite};

use crate::problem::{Bounds, ObjectiveProblem};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown base function `{0}`")]
    UnknownFunction(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("suite entry {index} ({name}): {reason}")]
    InvalidEntry { index: usize, name: String, reason: String },

    #[error("malformed suite file: {0}")]
    Malformed(#[from] serde_json::Error),

    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// One configured benchmark problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSpec {
    /// Unique label used in outputs; defaults to the base function name.
    pub id: String,
    pub function: BaseFunction,
    pub shift: Vec<f64>,
    pub bias: f64,
    pub bounds: Bounds,
    pub rotation: Option<Vec<Vec<f64>>>,
}

impl BenchSpec {
    /// Unshifted, unbiased spec on the function's default domain.
    pub fn new(function: BaseFunction, dim: usize) -> Result<Self, BenchError> {
        if dim < function.min_dim() {
            return Err(BenchError::DimensionMismatch { expected: function.min_dim(), actual: dim });
        }
        let (lo, hi) = function.default_interval();
        Ok(Self {
            id: function.name().to_string(),
            function,
            shift: vec![0.0; dim],
            bias: 0.0,
            bounds: Bounds::uniform(dim, lo, hi).expect("default intervals are valid"),
            rotation: None,
        })
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Result<Self, BenchError> {
        if shift.len() != self.dim() {
            return Err(BenchError::DimensionMismatch { expected: self.dim(), actual: shift.len() });
        }
        self.shift = shift;
        Ok(self)
    }

    pub fn with_bias(mut self, bias: f64) -> Self {
        self.bias = bias;
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    /// Where the shifted function attains its minimum value `bias`.
    pub fn optimum(&self) -> Vec<f64> {
        let base = self.function.argmin(self.dim());
        match &self.rotation {
            // M·(x − o) = a  ⇒  x = o + Mᵀ·a
            Some(m) => (0..self.dim())
                .map(|j| self.shift[j] + (0..self.dim()).map(|i| m[i][j] * base[i]).sum::<f64>())
                .collect(),
            None => base.iter().zip(&self.shift).map(|(a, o)| a + o).collect(),
        }
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let z: Vec<f64> = x.iter().zip(&self.shift).map(|(v, o)| v - o).collect();
        let z = match &self.rotation {
            Some(m) => m.iter().map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum()).collect(),
            None => z,
        };
        self.function.eval(&z) + self.bias
    }
}

/// `f_base(x − o) + b`, with the optional rotation applied after the shift.
pub fn evaluate_bench(spec: &BenchSpec, x: &[f64]) -> Result<f64, BenchError> {
    if x.len() != spec.dim() {
        return Err(BenchError::DimensionMismatch { expected: spec.dim(), actual: x.len() });
    }
    Ok(spec.eval_unchecked(x))
}

impl ObjectiveProblem for BenchSpec {
    fn name(&self) -> &str {
        &self.id
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        if x.len() != self.dim() {
            return f64::NAN;
        }
        self.eval_unchecked(x)
    }
}
