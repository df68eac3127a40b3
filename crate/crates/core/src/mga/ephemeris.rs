use serde::{Deserialize, Serialize};

use super::kepler::solve_kepler;
use super::vec3::Vec3;
use super::MgaError;

/// Mean heliocentric elements with a linear mean-longitude rate.
/// Angles in radians, the rate in radians per day, the epoch in days past J2000.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeplerianElements {
    pub a: f64,
    pub e: f64,
    pub inclination: f64,
    pub raan: f64,
    pub lon_perihelion: f64,
    pub mean_longitude: f64,
    pub mean_longitude_rate: f64,
    pub epoch: f64,
}

impl KeplerianElements {
    pub fn validate(&self) -> Result<(), MgaError> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(MgaError::InvalidInput(format!("semi-major axis {} must be positive", self.a)));
        }
        if !(0.0..1.0).contains(&self.e) {
            return Err(MgaError::InvalidInput(format!("eccentricity {} not in [0, 1)", self.e)));
        }
        let angles = [self.inclination, self.raan, self.lon_perihelion, self.mean_longitude, self.mean_longitude_rate, self.epoch];
        if angles.iter().any(|v| !v.is_finite()) {
            return Err(MgaError::InvalidInput("elements must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BodyModel {
    pub name: String,
    pub elements: KeplerianElements,
    /// Gravitational parameter, km³/s².
    pub mu: f64,
    /// Lowest allowed flyby pericentre radius, km.
    pub rp_min: f64,
}

impl BodyModel {
    pub fn validate(&self) -> Result<(), MgaError> {
        self.elements.validate().map_err(|e| MgaError::InvalidInput(format!("{}: {e}", self.name)))?;
        if !(self.mu > 0.0) || !(self.rp_min > 0.0) {
            return Err(MgaError::InvalidInput(format!("{}: mu and rp_min must be positive", self.name)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    /// km
    pub r: Vec3,
    /// km/s
    pub v: Vec3,
}

/// Heliocentric ecliptic state of `body` at `t` days past J2000.
///
/// Position follows the tabulated mean-longitude rate; velocity comes from the
/// two-body relation with `mu_sun` (km³/s²).
pub fn ephemeris_state(body: &BodyModel, t: f64, mu_sun: f64) -> Result<StateVector, MgaError> {
    let el = &body.elements;
    let mean_longitude = el.mean_longitude + el.mean_longitude_rate * (t - el.epoch);
    let mean_anomaly = mean_longitude - el.lon_perihelion;
    let ecc_anomaly = solve_kepler(mean_anomaly, el.e)?;

    let (sin_e, cos_e) = ecc_anomaly.sin_cos();
    let b = el.a * (1.0 - el.e * el.e).sqrt();
    let px = el.a * (cos_e - el.e);
    let py = b * sin_e;
    let rate = (mu_sun / el.a.powi(3)).sqrt() / (1.0 - el.e * cos_e);
    let vx = -el.a * sin_e * rate;
    let vy = b * cos_e * rate;

    let omega = el.lon_perihelion - el.raan;
    let (so, co) = omega.sin_cos();
    let (sn, cn) = el.raan.sin_cos();
    let (si, ci) = el.inclination.sin_cos();
    let rot = [
        [cn * co - sn * so * ci, -cn * so - sn * co * ci],
        [sn * co + cn * so * ci, -sn * so + cn * co * ci],
        [so * si, co * si],
    ];
    let apply = |x: f64, y: f64| -> Vec3 {
        [rot[0][0] * x + rot[0][1] * y, rot[1][0] * x + rot[1][1] * y, rot[2][0] * x + rot[2][1] * y]
    };
    Ok(StateVector { r: apply(px, py), v: apply(vx, vy) })
}
