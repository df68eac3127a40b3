use serde::{Deserialize, Serialize};

use super::ephemeris::BodyModel;
use super::vec3::{angle_between, norm, Vec3};
use super::MgaError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SwingbyOptions {
    /// km/s charged per radian of turn beyond what `rp_min` allows.
    pub penalty_slope: f64,
    /// Upper end of the pericentre bracket as a multiple of `rp_min`.
    pub cap_factor: f64,
}

impl Default for SwingbyOptions {
    fn default() -> Self {
        Self { penalty_slope: 10.0, cap_factor: 1e6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Swingby {
    /// Pericentre burn plus any infeasibility penalty, km/s.
    pub dv: f64,
    /// Pericentre radius, km.
    pub rp: f64,
    /// Part of `dv` that is penalty rather than burn.
    pub penalty: f64,
    /// Angle between the incoming and outgoing excess velocities.
    pub turn: f64,
}

pub fn powered_swingby_dv(vinf_in: Vec3, vinf_out: Vec3, body: &BodyModel) -> Result<Swingby, MgaError> {
    powered_swingby_dv_with(vinf_in, vinf_out, body, &SwingbyOptions::default())
}

/// Pericentre burn joining two hyperbolas with a common pericentre.
pub fn powered_swingby_dv_with(vinf_in: Vec3, vinf_out: Vec3, body: &BodyModel, options: &SwingbyOptions) -> Result<Swingby, MgaError> {
    let vi = norm(vinf_in);
    let vo = norm(vinf_out);
    if !(vi > 0.0) || !(vo > 0.0) || !vi.is_finite() || !vo.is_finite() {
        return Err(MgaError::InvalidInput("excess velocities must be nonzero and finite".into()));
    }
    let mu = body.mu;
    let rp_min = body.rp_min;
    let rp_cap = rp_min * options.cap_factor;
    let alpha = angle_between(vinf_in, vinf_out);

    let half_turn = |v: f64, r: f64| (mu / (mu + r * v * v)).asin();
    let turn = |r: f64| half_turn(vi, r) + half_turn(vo, r);
    let burn = |r: f64| ((vo * vo + 2.0 * mu / r).sqrt() - (vi * vi + 2.0 * mu / r).sqrt()).abs();

    let g_max = turn(rp_min);
    if alpha >= g_max {
        let penalty = options.penalty_slope * (alpha - g_max);
        return Ok(Swingby { dv: burn(rp_min) + penalty, rp: rp_min, penalty, turn: alpha });
    }
    if alpha <= turn(rp_cap) {
        return Ok(Swingby { dv: burn(rp_cap), rp: rp_cap, penalty: 0.0, turn: alpha });
    }
    let rp = solve_turn(alpha, mu, vi, vo, rp_min, rp_cap);
    Ok(Swingby { dv: burn(rp), rp, penalty: 0.0, turn: alpha })
}

/// Root of the decreasing turn function on `[lo, hi]`, Newton in `ln r`
/// with bisection whenever the step leaves the bracket.
fn solve_turn(alpha: f64, mu: f64, vi: f64, vo: f64, lo: f64, hi: f64) -> f64 {
    let g = |r: f64| {
        let ui = mu / (mu + r * vi * vi);
        let uo = mu / (mu + r * vo * vo);
        let value = ui.asin() + uo.asin() - alpha;
        // d/d(ln r) of asin(u) = r·u'/√(1−u²), with u' = −u²v²/μ
        let slope = -r * (ui * ui * vi * vi / mu / (1.0 - ui * ui).sqrt() + uo * uo * vo * vo / mu / (1.0 - uo * uo).sqrt());
        (value, slope)
    };
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut s = 0.5 * (a + b);
    for _ in 0..200 {
        let (value, slope) = g(s.exp());
        if value == 0.0 {
            break;
        }
        if value > 0.0 {
            a = s;
        } else {
            b = s;
        }
        let newton = s - value / slope;
        let next = if newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - s).abs() <= 1e-15 * s.abs().max(1.0) {
            s = next;
            break;
        }
        s = next;
    }
    s.exp()
}

/// Burn at pericentre `r_p` taking a hyperbolic approach with excess `vinf`
/// into an orbit of eccentricity `e_target` (1 means parabolic).
pub fn insertion_dv(vinf: f64, rp: f64, e_target: f64, mu: f64) -> Result<f64, MgaError> {
    if !(vinf >= 0.0) || !vinf.is_finite() {
        return Err(MgaError::InvalidInput(format!("excess speed {vinf} must be non-negative")));
    }
    if !(rp > 0.0) || !(mu > 0.0) {
        return Err(MgaError::InvalidInput("pericentre radius and mu must be positive".into()));
    }
    if !(0.0..=1.0).contains(&e_target) {
        return Err(MgaError::InvalidInput(format!("target eccentricity {e_target} not in [0, 1]")));
    }
    Ok((vinf * vinf + 2.0 * mu / rp).sqrt() - (mu / rp * (1.0 + e_target)).sqrt())
}
