//! Single-revolution Lambert solver in Izzo's non-dimensional formulation:
//! Householder iteration on `x` with the time of flight from Lagrange's,
//! Battin's hypergeometric, or Lancaster's expression depending on `|x − 1|`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::vec3::{add, angle_between, cross, norm, scale, sub, Vec3};
use super::MgaError;

/// Below this `|r̂1 × r̂2|` the transfer plane is not defined by the radii.
const COLLINEAR_SINE: f64 = 1e-10;
const MAX_ITER: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Counter-clockwise seen from +z.
    #[default]
    Prograde,
    Retrograde,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertSolution {
    pub v1: Vec3,
    pub v2: Vec3,
    pub iterations: usize,
}

/// Velocities at `r1` and `r2` of the conic through both points in `tof` seconds.
///
/// Transfers of exactly 180° have no plane from the radii alone; the plane
/// containing `r1` whose normal is closest to +z is used, which is the
/// ecliptic for coplanar inputs. Radii along the z axis at 180° and any
/// transfer near 0° are rejected as degenerate.
pub fn lambert(r1: Vec3, r2: Vec3, tof: f64, mu: f64, direction: Direction) -> Result<LambertSolution, MgaError> {
    if !(tof > 0.0) || !tof.is_finite() {
        return Err(MgaError::InvalidInput(format!("time of flight {tof} must be positive")));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(MgaError::InvalidInput(format!("mu {mu} must be positive")));
    }
    if r1.iter().chain(&r2).any(|v| !v.is_finite()) {
        return Err(MgaError::InvalidInput("positions must be finite".into()));
    }
    let rn1 = norm(r1);
    let rn2 = norm(r2);
    if rn1 == 0.0 || rn2 == 0.0 {
        return Err(MgaError::InvalidInput("positions must be nonzero".into()));
    }
    let ir1 = scale(r1, 1.0 / rn1);
    let ir2 = scale(r2, 1.0 / rn2);
    let angle = angle_between(r1, r2);
    let h = cross(ir1, ir2);
    let sin_angle = norm(h);

    let chord = norm(sub(r2, r1));
    let s = 0.5 * (rn1 + rn2 + chord);
    let mut lambda = (1.0 - chord / s).max(0.0).sqrt();

    let (mut it1, mut it2);
    if sin_angle < COLLINEAR_SINE {
        if angle < 0.5 * PI {
            return Err(MgaError::DegenerateGeometry { angle });
        }
        let z = [0.0, 0.0, 1.0];
        let normal = sub(z, scale(ir1, ir1[2]));
        let n = norm(normal);
        if n < COLLINEAR_SINE {
            return Err(MgaError::DegenerateGeometry { angle });
        }
        let ih = scale(normal, 1.0 / n);
        it1 = cross(ih, ir1);
        it2 = cross(ih, ir2);
    } else {
        let ih = scale(h, 1.0 / sin_angle);
        if ih[2] < 0.0 {
            lambda = -lambda;
            it1 = cross(ir1, ih);
            it2 = cross(ir2, ih);
        } else {
            it1 = cross(ih, ir1);
            it2 = cross(ih, ir2);
        }
    }
    it1 = scale(it1, 1.0 / norm(it1));
    it2 = scale(it2, 1.0 / norm(it2));
    if direction == Direction::Retrograde {
        lambda = -lambda;
        it1 = scale(it1, -1.0);
        it2 = scale(it2, -1.0);
    }

    let t = (2.0 * mu / s.powi(3)).sqrt() * tof;
    let (x, iterations) = find_x(lambda, t)?;

    let gamma = (mu * s / 2.0).sqrt();
    let rho = (rn1 - rn2) / chord;
    let sigma = (1.0 - rho * rho).max(0.0).sqrt();
    let y = (1.0 - lambda * lambda + lambda * lambda * x * x).sqrt();
    let vr1 = gamma * ((lambda * y - x) - rho * (lambda * y + x)) / rn1;
    let vr2 = -gamma * ((lambda * y - x) + rho * (lambda * y + x)) / rn2;
    let vt = gamma * sigma * (y + lambda * x);
    let v1 = add(scale(ir1, vr1), scale(it1, vt / rn1));
    let v2 = add(scale(ir2, vr2), scale(it2, vt / rn2));
    if v1.iter().chain(&v2).any(|v| !v.is_finite()) {
        return Err(MgaError::LambertNonConvergence { residual: f64::NAN });
    }
    Ok(LambertSolution { v1, v2, iterations })
}

fn find_x(lambda: f64, t: f64) -> Result<(f64, usize), MgaError> {
    let l2 = lambda * lambda;
    let l3 = l2 * lambda;
    let t00 = lambda.acos() + lambda * (1.0 - l2).sqrt();
    let t1 = 2.0 / 3.0 * (1.0 - l3);
    let mut x = if t >= t00 {
        -(t - t00) / (t - t00 + 4.0)
    } else if t <= t1 {
        t1 * (t1 - t) / (0.4 * (1.0 - l2 * l3) * t) + 1.0
    } else {
        (t / t00).powf(std::f64::consts::LN_2 / (t1 / t00).ln()) - 1.0
    };

    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let tof = x_to_tof(x, lambda);
        let (d1, d2, d3) = tof_derivatives(x, tof, lambda);
        let delta = tof - t;
        let d1sq = d1 * d1;
        let step = delta * (d1sq - delta * d2 / 2.0) / (d1 * (d1sq - delta * d2) + d3 * delta * delta / 6.0);
        let next = x - step;
        if !next.is_finite() || next <= -1.0 {
            return Err(MgaError::LambertNonConvergence { residual: (delta / t).abs() });
        }
        let change = (next - x).abs();
        x = next;
        if change < 1e-14 * x.abs().max(1.0) {
            break;
        }
    }
    let residual = ((x_to_tof(x, lambda) - t) / t).abs();
    if residual < 1e-11 {
        Ok((x, iterations))
    } else {
        Err(MgaError::LambertNonConvergence { residual })
    }
}

/// Non-dimensional time of flight for a given `x` (zero revolutions).
fn x_to_tof(x: f64, lambda: f64) -> f64 {
    let dist = (x - 1.0).abs();
    if dist > 0.01 && dist < 0.2 {
        return tof_lagrange(x, lambda);
    }
    let k = lambda * lambda;
    let e = x * x - 1.0;
    let rho = e.abs();
    let z = (1.0 + k * e).sqrt();
    if dist <= 0.01 {
        let eta = z - lambda * x;
        let s1 = 0.5 * (1.0 - lambda - x * eta);
        let q = 4.0 / 3.0 * hypergeometric_f(s1);
        return (eta.powi(3) * q + 4.0 * lambda * eta) / 2.0;
    }
    let y = rho.sqrt();
    let g = x * z - lambda * e;
    let d = if e < 0.0 { g.clamp(-1.0, 1.0).acos() } else { (y * (z - lambda * x) + g).ln() };
    (x - lambda * z - d / y) / e
}

fn tof_lagrange(x: f64, lambda: f64) -> f64 {
    let a = 1.0 / (1.0 - x * x);
    if a > 0.0 {
        let alpha = 2.0 * x.acos();
        let mut beta = 2.0 * (lambda * lambda / a).sqrt().asin();
        if lambda < 0.0 {
            beta = -beta;
        }
        a * a.sqrt() * ((alpha - alpha.sin()) - (beta - beta.sin())) / 2.0
    } else {
        let alpha = 2.0 * x.acosh();
        let mut beta = 2.0 * (-lambda * lambda / a).sqrt().asinh();
        if lambda < 0.0 {
            beta = -beta;
        }
        -a * (-a).sqrt() * ((beta - beta.sinh()) - (alpha - alpha.sinh())) / 2.0
    }
}

/// Gauss hypergeometric ₂F₁(3, 1; 5/2; z) by its series.
fn hypergeometric_f(z: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut j = 0.0;
    loop {
        term *= (3.0 + j) * (1.0 + j) / (2.5 + j) * z / (j + 1.0);
        sum += term;
        j += 1.0;
        if term.abs() <= 1e-17 * sum.abs() || j > 1000.0 {
            return sum;
        }
    }
}

fn tof_derivatives(x: f64, t: f64, lambda: f64) -> (f64, f64, f64) {
    let l2 = lambda * lambda;
    let l3 = l2 * lambda;
    let umx2 = 1.0 - x * x;
    let y = (1.0 - l2 * umx2).sqrt();
    let y2 = y * y;
    let y3 = y2 * y;
    let d1 = (3.0 * t * x - 2.0 + 2.0 * l3 * x / y) / umx2;
    let d2 = (3.0 * t + 5.0 * x * d1 + 2.0 * (1.0 - l2) * l3 / y3) / umx2;
    let d3 = (7.0 * x * d2 + 8.0 * d1 - 6.0 * (1.0 - l2) * l2 * l3 * x / y3 / y2) / umx2;
    (d1, d2, d3)
}
