//! JSON ephemeris and problem files.
//!
//! Ephemeris: `{"mu_sun_km3_s2": 1.327e11, "bodies": [...]}` or a bare array of
//! bodies, each with `name, a_km, e, i_deg, raan_deg, lonperi_deg, L0_deg,
//! L_rate_deg_per_day, epoch_jd2000_days, mu_km3_s2, rp_min_km`.
//!
//! Problem: `sequence` (body names), `t0_window`, `leg_windows`,
//! `capture_rp_km`, `capture_e`, and optionally `name`, `penalty_value`,
//! `swingby`, `mu_sun_km3_s2`, plus either `ephemeris` (path, relative to the
//! problem file) or inline `bodies`. Without either the shipped planets are used.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ephemeris::{BodyModel, KeplerianElements};
use super::objective::MgaProblem;
use super::swingby::SwingbyOptions;
use super::MgaError;

const PLANETS: &str = include_str!("../../data/planets.json");
const CASSINI1: &str = include_str!("../../data/cassini1.json");
pub const MU_SUN: f64 = 1.327_124_400_18e11;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BodyRecord {
    name: String,
    a_km: f64,
    e: f64,
    i_deg: f64,
    raan_deg: f64,
    lonperi_deg: f64,
    #[serde(rename = "L0_deg")]
    l0_deg: f64,
    #[serde(rename = "L_rate_deg_per_day")]
    l_rate_deg_per_day: f64,
    epoch_jd2000_days: f64,
    mu_km3_s2: f64,
    rp_min_km: f64,
}

impl BodyRecord {
    fn into_model(self) -> Result<BodyModel, MgaError> {
        let body = BodyModel {
            name: self.name,
            elements: KeplerianElements {
                a: self.a_km,
                e: self.e,
                inclination: self.i_deg.to_radians(),
                raan: self.raan_deg.to_radians(),
                lon_perihelion: self.lonperi_deg.to_radians(),
                mean_longitude: self.l0_deg.to_radians(),
                mean_longitude_rate: self.l_rate_deg_per_day.to_radians(),
                epoch: self.epoch_jd2000_days,
            },
            mu: self.mu_km3_s2,
            rp_min: self.rp_min_km,
        };
        body.validate()?;
        Ok(body)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EphemerisFile {
    Full {
        mu_sun_km3_s2: Option<f64>,
        bodies: Vec<BodyRecord>,
    },
    Bare(Vec<BodyRecord>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ephemeris {
    pub mu_sun: f64,
    pub bodies: Vec<BodyModel>,
}

impl Ephemeris {
    fn from_records(mu_sun: Option<f64>, records: Vec<BodyRecord>) -> Result<Self, MgaError> {
        let bodies = records.into_iter().map(BodyRecord::into_model).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { mu_sun: mu_sun.unwrap_or(MU_SUN), bodies })
    }

    /// Case-insensitive lookup.
    pub fn body(&self, name: &str) -> Result<&BodyModel, MgaError> {
        self.bodies
            .iter()
            .find(|b| b.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| MgaError::UnknownBody(name.to_string()))
    }
}

pub fn parse_ephemeris(text: &str) -> Result<Ephemeris, MgaError> {
    match serde_json::from_str(text)? {
        EphemerisFile::Full { mu_sun_km3_s2, bodies } => Ephemeris::from_records(mu_sun_km3_s2, bodies),
        EphemerisFile::Bare(bodies) => Ephemeris::from_records(None, bodies),
    }
}

pub fn load_ephemeris(path: impl AsRef<Path>) -> Result<Ephemeris, MgaError> {
    parse_ephemeris(&read(path.as_ref())?)
}

/// Mean elements of the eight planets, valid roughly 1800–2050.
pub fn shipped_ephemeris() -> Ephemeris {
    parse_ephemeris(PLANETS).expect("shipped ephemeris is valid")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    name: Option<String>,
    ephemeris: Option<PathBuf>,
    bodies: Option<Vec<BodyRecord>>,
    mu_sun_km3_s2: Option<f64>,
    sequence: Vec<String>,
    t0_window: [f64; 2],
    leg_windows: Vec<[f64; 2]>,
    capture_rp_km: f64,
    capture_e: f64,
    penalty_value: Option<f64>,
    swingby: Option<SwingbyOptions>,
}

pub fn parse_mga_problem(text: &str, base_dir: Option<&Path>) -> Result<MgaProblem, MgaError> {
    let file: ProblemFile = serde_json::from_str(text)?;
    let ephemeris = match (file.ephemeris, file.bodies) {
        (Some(_), Some(_)) => return Err(MgaError::InvalidProblem("give either `ephemeris` or `bodies`, not both".into())),
        (Some(path), None) => {
            let path = match base_dir {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path,
            };
            load_ephemeris(path)?
        }
        (None, Some(records)) => Ephemeris::from_records(None, records)?,
        (None, None) => shipped_ephemeris(),
    };
    let mu_sun = file.mu_sun_km3_s2.unwrap_or(ephemeris.mu_sun);
    let sequence = file.sequence.iter().map(|n| ephemeris.body(n).cloned()).collect::<Result<Vec<_>, _>>()?;
    let name = file.name.unwrap_or_else(|| file.sequence.join("-"));
    let mut problem = MgaProblem::new(name, mu_sun, sequence, file.t0_window, &file.leg_windows, file.capture_rp_km, file.capture_e)?;
    if let Some(p) = file.penalty_value {
        problem = problem.with_penalty_value(p);
    }
    if let Some(s) = file.swingby {
        if !(s.penalty_slope >= 0.0) || !(s.cap_factor > 1.0) {
            return Err(MgaError::InvalidProblem("swingby needs penalty_slope >= 0 and cap_factor > 1".into()));
        }
        problem = problem.with_swingby(s);
    }
    Ok(problem)
}

pub fn load_mga_problem(path: impl AsRef<Path>) -> Result<MgaProblem, MgaError> {
    let path = path.as_ref();
    parse_mga_problem(&read(path)?, path.parent())
}

/// Earth–Venus–Venus–Earth–Jupiter–Saturn with capture at Saturn.
pub fn default_cassini1() -> MgaProblem {
    parse_mga_problem(CASSINI1, None).expect("shipped problem is valid")
}

fn read(path: &Path) -> Result<String, MgaError> {
    std::fs::read_to_string(path).map_err(|source| MgaError::Io { path: path.to_path_buf(), source })
}
