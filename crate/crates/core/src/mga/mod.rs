//! Patched-conics multi-gravity-assist trajectory objective.
//!
//! Units: km, km/s, seconds inside the physics; epochs and leg durations in
//! the decision vector are days (epochs counted from J2000).

mod ephemeris;
mod files;
mod kepler;
mod lambert;
mod objective;
mod swingby;
pub mod vec3;

use std::path::PathBuf;

use thiserror::Error;

pub use ephemeris::{ephemeris_state, BodyModel, KeplerianElements, StateVector};
pub use files::{default_cassini1, load_ephemeris, load_mga_problem, parse_ephemeris, parse_mga_problem, shipped_ephemeris, Ephemeris};
pub use kepler::solve_kepler;
pub use lambert::{lambert, Direction, LambertSolution};
pub use objective::{mga_breakdown, mga_objective, FlybyReport, LegReport, MgaBreakdown, MgaProblem};
pub use swingby::{insertion_dv, powered_swingby_dv, powered_swingby_dv_with, Swingby, SwingbyOptions};

pub const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Error)]
pub enum MgaError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Kepler iteration did not converge (residual {residual:e})")]
    KeplerNonConvergence { residual: f64 },

    #[error("degenerate transfer geometry (angle {angle} rad)")]
    DegenerateGeometry { angle: f64 },

    #[error("Lambert iteration did not converge (relative residual {residual:e})")]
    LambertNonConvergence { residual: f64 },

    #[error("decision variable {index} = {value} outside [{lower}, {upper}]")]
    OutOfBounds { index: usize, value: f64, lower: f64, upper: f64 },

    #[error("decision vector has length {actual}, expected {expected}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown body `{0}`")]
    UnknownBody(String),

    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}
