use std::f64::consts::{PI, TAU};

use super::MgaError;

const MAX_ITER: usize = 50;
const TOLERANCE: f64 = 1e-12;

/// Eccentric anomaly `E` with `E − e·sin E = M`, for `0 ≤ e < 1`.
///
/// Newton's method from `E₀ = M + e·sin M`, with bisection on the bracket
/// `[−π, π]` (after reducing `M`) whenever a Newton step would leave it.
pub fn solve_kepler(mean_anomaly: f64, e: f64) -> Result<f64, MgaError> {
    if !(0.0..1.0).contains(&e) {
        return Err(MgaError::InvalidInput(format!("eccentricity {e} not in [0, 1)")));
    }
    if !mean_anomaly.is_finite() {
        return Err(MgaError::InvalidInput("mean anomaly must be finite".into()));
    }
    if e == 0.0 {
        return Ok(mean_anomaly);
    }
    // Reduce to [-π, π]; E - e sin E is odd and increasing, so E stays there too.
    let turns = (mean_anomaly / TAU).round();
    let m = mean_anomaly - turns * TAU;
    let f = |ea: f64| ea - e * ea.sin() - m;

    let (mut lo, mut hi) = (-PI, PI);
    let mut ea = m + e * m.sin();
    let mut residual = f(ea);
    for _ in 0..MAX_ITER {
        if residual.abs() < TOLERANCE * 1e-2 {
            break;
        }
        if residual > 0.0 {
            hi = ea;
        } else {
            lo = ea;
        }
        let newton = ea - residual / (1.0 - e * ea.cos());
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if next == ea {
            break;
        }
        ea = next;
        residual = f(ea);
    }
    let full = ea + turns * TAU;
    let check = full - e * full.sin() - mean_anomaly;
    if check.abs() < TOLERANCE {
        Ok(full)
    } else {
        Err(MgaError::KeplerNonConvergence { residual: check })
    }
}
