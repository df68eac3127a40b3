//! Box-bounded objective problems and the evaluation wrapper every optimizer
//! routes its fitness calls through.

use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};

/// Per-dimension box constraints `lower[j] < upper[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBounds", into = "RawBounds")]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawBounds> for Bounds {
    type Error = OptimError;

    fn try_from(raw: RawBounds) -> Result<Self> {
        Bounds::new(raw.lower, raw.upper)
    }
}

impl From<Bounds> for RawBounds {
    fn from(b: Bounds) -> Self {
        RawBounds { lower: b.lower, upper: b.upper }
    }
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(OptimError::DimensionMismatch { expected: lower.len(), actual: upper.len() });
        }
        if lower.is_empty() {
            return Err(OptimError::ZeroDimension);
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            // NaN fails this comparison as well.
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(OptimError::InvalidBounds { index, lower: lo, upper: hi });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` in every one of `dim` coordinates.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }
}

/// Repairs `x` into the box by clamping each coordinate.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Result<Vec<f64>> {
    if x.len() != bounds.dim() {
        return Err(OptimError::DimensionMismatch { expected: bounds.dim(), actual: x.len() });
    }
    Ok(x.iter().zip(bounds.lower.iter().zip(&bounds.upper)).map(|(&v, (&lo, &hi))| v.max(lo).min(hi)).collect())
}

/// In-place variant used on hot paths where the length is already known to match.
pub(crate) fn clamp_in_place(x: &mut [f64], bounds: &Bounds) {
    debug_assert_eq!(x.len(), bounds.dim());
    for ((v, &lo), &hi) in x.iter_mut().zip(&bounds.lower).zip(&bounds.upper) {
        *v = v.max(lo).min(hi);
    }
}

/// A deterministic scalar cost over a bounded real vector, to be minimized.
///
/// `evaluate` must be pure: the same input always yields the same output, and
/// implementations must tolerate concurrent calls from independent runs.
pub trait ObjectiveProblem: Send + Sync {
    fn name(&self) -> &str;

    fn bounds(&self) -> &Bounds;

    fn evaluate(&self, x: &[f64]) -> f64;

    fn dimension(&self) -> usize {
        self.bounds().dim()
    }
}

impl<P: ObjectiveProblem + ?Sized> ObjectiveProblem for &P {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn bounds(&self) -> &Bounds {
        (**self).bounds()
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

impl<P: ObjectiveProblem + ?Sized> ObjectiveProblem for Box<P> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn bounds(&self) -> &Bounds {
        (**self).bounds()
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }
}

/// Closure-backed problem, handy for tests and ad-hoc objectives.
pub struct FnProblem<F> {
    name: String,
    bounds: Bounds,
    f: F,
}

impl<F> FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    pub fn new(name: impl Into<String>, bounds: Bounds, f: F) -> Self {
        Self { name: name.into(), bounds, f }
    }
}

impl<F> ObjectiveProblem for FnProblem<F>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Counts evaluations and maps non-finite costs to a penalty value.
pub(crate) struct Evaluator<'a> {
    problem: &'a dyn ObjectiveProblem,
    penalty: f64,
    count: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a dyn ObjectiveProblem, penalty: f64) -> Self {
        Self { problem, penalty, count: 0 }
    }

    pub fn eval(&mut self, x: &[f64]) -> f64 {
        debug_assert!(self.problem.bounds().contains(x), "out-of-bounds evaluation in {}", self.problem.name());
        self.count += 1;
        let f = self.problem.evaluate(x);
        if f.is_finite() {
            f
        } else {
            self.penalty
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn bounds(&self) -> &'a Bounds {
        self.problem.bounds()
    }
}

/// Penalty substituted for non-finite objective values when an algorithm's
/// configuration does not name its own.
pub const DEFAULT_PENALTY: f64 = 1.0e20;
