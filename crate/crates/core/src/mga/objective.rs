use serde::Serialize;

use super::ephemeris::{ephemeris_state, BodyModel};
use super::lambert::{lambert, Direction};
use super::swingby::{insertion_dv, powered_swingby_dv_with, SwingbyOptions};
use super::vec3::{norm, sub, Vec3};
use super::{MgaError, SECONDS_PER_DAY};
use crate::problem::{Bounds, ObjectiveProblem, DEFAULT_PENALTY};

/// Body sequence with launch-epoch and leg-duration windows.
///
/// The decision vector is `[t0, T1, …, T_{N−1}]`: launch epoch in days past
/// J2000 followed by each leg's duration in days.
#[derive(Debug, Clone, PartialEq)]
pub struct MgaProblem {
    pub name: String,
    pub mu_sun: f64,
    pub sequence: Vec<BodyModel>,
    pub capture_rp: f64,
    pub capture_e: f64,
    /// Returned when a leg has no Lambert solution.
    pub penalty_value: f64,
    pub swingby: SwingbyOptions,
    bounds: Bounds,
}

impl MgaProblem {
    pub fn new(
        name: impl Into<String>,
        mu_sun: f64,
        sequence: Vec<BodyModel>,
        t0_window: [f64; 2],
        leg_windows: &[[f64; 2]],
        capture_rp: f64,
        capture_e: f64,
    ) -> Result<Self, MgaError> {
        let invalid = |m: String| Err(MgaError::InvalidProblem(m));
        if sequence.len() < 2 {
            return invalid(format!("sequence needs at least 2 bodies, got {}", sequence.len()));
        }
        if leg_windows.len() != sequence.len() - 1 {
            return invalid(format!("{} bodies need {} leg windows, got {}", sequence.len(), sequence.len() - 1, leg_windows.len()));
        }
        if !(mu_sun > 0.0) {
            return invalid("mu_sun must be positive".into());
        }
        for body in &sequence {
            body.validate()?;
        }
        if !(capture_rp > 0.0) || !(0.0..=1.0).contains(&capture_e) {
            return invalid("capture orbit needs rp > 0 and 0 <= e <= 1".into());
        }
        if !(t0_window[0] < t0_window[1]) {
            return invalid(format!("empty launch window {t0_window:?}"));
        }
        for (k, w) in leg_windows.iter().enumerate() {
            if !(w[0] > 0.0 && w[0] < w[1]) {
                return invalid(format!("leg {} window {w:?} must satisfy 0 < lower < upper", k + 1));
            }
        }
        let lower = std::iter::once(t0_window[0]).chain(leg_windows.iter().map(|w| w[0])).collect();
        let upper = std::iter::once(t0_window[1]).chain(leg_windows.iter().map(|w| w[1])).collect();
        let bounds = Bounds::new(lower, upper).map_err(|e| MgaError::InvalidProblem(e.to_string()))?;
        Ok(Self {
            name: name.into(),
            mu_sun,
            sequence,
            capture_rp,
            capture_e,
            penalty_value: DEFAULT_PENALTY,
            swingby: SwingbyOptions::default(),
            bounds,
        })
    }

    pub fn with_penalty_value(mut self, value: f64) -> Self {
        self.penalty_value = value;
        self
    }

    pub fn with_swingby(mut self, options: SwingbyOptions) -> Self {
        self.swingby = options;
        self
    }

    pub fn decision_bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.sequence.len()
    }

    fn check(&self, x: &[f64]) -> Result<(), MgaError> {
        if x.len() != self.dim() {
            return Err(MgaError::DimensionMismatch { expected: self.dim(), actual: x.len() });
        }
        for (index, &value) in x.iter().enumerate() {
            let (lower, upper) = (self.bounds.lower()[index], self.bounds.upper()[index]);
            if !(value >= lower && value <= upper) {
                return Err(MgaError::OutOfBounds { index, value, lower, upper });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LegReport {
    pub from: String,
    pub to: String,
    /// Days past J2000.
    pub departure: f64,
    pub duration_days: f64,
    pub v1: Vec3,
    pub v2: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlybyReport {
    pub body: String,
    pub dv: f64,
    pub rp: f64,
    pub penalty: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MgaBreakdown {
    pub legs: Vec<LegReport>,
    pub launch_dv: f64,
    pub flybys: Vec<FlybyReport>,
    pub insertion_dv: f64,
    pub total: f64,
    /// Set when a leg failed and `total` is the penalty value.
    pub failure: Option<String>,
}

/// Launch excess plus flyby burns plus capture burn, km/s.
pub fn mga_objective(prob: &MgaProblem, x: &[f64]) -> Result<f64, MgaError> {
    mga_breakdown(prob, x).map(|b| b.total)
}

pub fn mga_breakdown(prob: &MgaProblem, x: &[f64]) -> Result<MgaBreakdown, MgaError> {
    prob.check(x)?;
    let n = prob.sequence.len();
    let mut epochs = Vec::with_capacity(n);
    epochs.push(x[0]);
    for k in 1..n {
        epochs.push(epochs[k - 1] + x[k]);
    }
    let states = prob
        .sequence
        .iter()
        .zip(&epochs)
        .map(|(body, &t)| ephemeris_state(body, t, prob.mu_sun))
        .collect::<Result<Vec<_>, _>>()?;

    let mut legs = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let tof = x[k + 1] * SECONDS_PER_DAY;
        match lambert(states[k].r, states[k + 1].r, tof, prob.mu_sun, Direction::Prograde) {
            Ok(sol) => legs.push(LegReport {
                from: prob.sequence[k].name.clone(),
                to: prob.sequence[k + 1].name.clone(),
                departure: epochs[k],
                duration_days: x[k + 1],
                v1: sol.v1,
                v2: sol.v2,
            }),
            Err(e @ (MgaError::DegenerateGeometry { .. } | MgaError::LambertNonConvergence { .. })) => {
                return Ok(MgaBreakdown {
                    legs,
                    launch_dv: 0.0,
                    flybys: Vec::new(),
                    insertion_dv: 0.0,
                    total: prob.penalty_value,
                    failure: Some(format!("leg {}: {e}", k + 1)),
                });
            }
            Err(e) => return Err(e),
        }
    }

    let launch_dv = norm(sub(legs[0].v1, states[0].v));
    let mut flybys = Vec::with_capacity(n.saturating_sub(2));
    for k in 1..n - 1 {
        let vin = sub(legs[k - 1].v2, states[k].v);
        let vout = sub(legs[k].v1, states[k].v);
        let s = powered_swingby_dv_with(vin, vout, &prob.sequence[k], &prob.swingby)?;
        flybys.push(FlybyReport { body: prob.sequence[k].name.clone(), dv: s.dv, rp: s.rp, penalty: s.penalty });
    }
    let arrival = &prob.sequence[n - 1];
    let vinf_arrival = norm(sub(legs[n - 2].v2, states[n - 1].v));
    let insertion = insertion_dv(vinf_arrival, prob.capture_rp, prob.capture_e, arrival.mu)?;
    let total = launch_dv + flybys.iter().map(|f| f.dv).sum::<f64>() + insertion;
    Ok(MgaBreakdown { legs, launch_dv, flybys, insertion_dv: insertion, total, failure: None })
}

impl ObjectiveProblem for MgaProblem {
    fn name(&self) -> &str {
        &self.name
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        mga_objective(self, x).unwrap_or(self.penalty_value)
    }
}
