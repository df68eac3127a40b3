//! Random step generators and the CF decay schedule shared by GMPA and MPA.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{OptimError, Result};
use crate::rng::RandomSource;

/// Tail exponent of the Mantegna Lévy construction, with its scale `σ_u`
/// precomputed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LevyParams {
    beta: f64,
    sigma_u: f64,
}

impl LevyParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 2.0) {
            return Err(OptimError::InvalidParameter { name: "levy_beta", reason: format!("{beta} not in (0, 2]") });
        }
        Ok(Self { beta, sigma_u: mantegna_sigma_u(beta) })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sigma_u(&self) -> f64 {
        self.sigma_u
    }
}

impl Default for LevyParams {
    fn default() -> Self {
        Self::new(1.5).expect("1.5 is a valid exponent")
    }
}

impl TryFrom<f64> for LevyParams {
    type Error = OptimError;
    fn try_from(beta: f64) -> Result<Self> {
        Self::new(beta)
    }
}

impl From<LevyParams> for f64 {
    fn from(p: LevyParams) -> f64 {
        p.beta
    }
}

/// `σ_u = [Γ(1+β)·sin(πβ/2) / (Γ((1+β)/2)·β·2^((β−1)/2))]^(1/β)`.
pub fn mantegna_sigma_u(beta: f64) -> f64 {
    let num = gamma(1.0 + beta) * (std::f64::consts::PI * beta / 2.0).sin();
    let den = gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

/// `u / |v|^(1/β)` for pre-drawn `u ~ N(0, σ_u²)` and `v ~ N(0, 1)`.
#[inline]
pub fn mantegna_step(u: f64, v: f64, beta: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    u / v.abs().powf(1.0 / beta)
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(OptimError::ZeroDimension)
    } else {
        Ok(())
    }
}

/// `R_B`: i.i.d. standard normal entries.
pub fn brownian_vector(d: usize, rng: &mut impl RandomSource) -> Result<Vec<f64>> {
    check_dim(d)?;
    Ok((0..d).map(|_| rng.normal()).collect())
}

/// `R_L`: i.i.d. Mantegna Lévy steps.
pub fn levy_vector(d: usize, params: &LevyParams, rng: &mut impl RandomSource) -> Result<Vec<f64>> {
    check_dim(d)?;
    Ok((0..d).map(|_| rng.levy(params)).collect())
}

/// `R`: i.i.d. uniform entries in `[0, 1)`.
pub fn uniform_vector(d: usize, rng: &mut impl RandomSource) -> Result<Vec<f64>> {
    check_dim(d)?;
    Ok((0..d).map(|_| rng.uniform()).collect())
}

/// `U`: entry is 1 when an independent uniform draw falls below `fads`.
pub fn binary_mask(d: usize, fads: f64, rng: &mut impl RandomSource) -> Result<Vec<f64>> {
    check_dim(d)?;
    if !(0.0..=1.0).contains(&fads) {
        return Err(OptimError::InvalidParameter { name: "fads", reason: format!("{fads} not in [0, 1]") });
    }
    Ok((0..d).map(|_| if rng.uniform() < fads { 1.0 } else { 0.0 }).collect())
}

/// `CF = (1 − t/T)^(2t/T)`, with `CF(T, T) = 0`.
pub fn cf(t: usize, max_iter: usize) -> Result<f64> {
    if max_iter == 0 {
        return Err(OptimError::InvalidBudget("max iterations must be positive".into()));
    }
    if t > max_iter {
        return Err(OptimError::IterationOutOfRange { t, max: max_iter });
    }
    if t == max_iter {
        return Ok(0.0);
    }
    let s = t as f64 / max_iter as f64;
    Ok((1.0 - s).powf(2.0 * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{seeded_rng, FixedDraws};

    #[test]
    fn cf_endpoints_and_midpoint() {
        assert_eq!(cf(0, 90).unwrap(), 1.0);
        assert_eq!(cf(90, 90).unwrap(), 0.0);
        assert!((cf(45, 90).unwrap() - 0.5).abs() < 1e-15);
        assert!(cf(91, 90).is_err());
        assert!(cf(0, 0).is_err());
    }

    #[test]
    fn cf_in_unit_interval() {
        for max in 1..60 {
            for t in 0..=max {
                let c = cf(t, max).unwrap();
                assert!((0.0..=1.0).contains(&c), "cf({t},{max}) = {c}");
            }
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        let mut rng = seeded_rng(0);
        assert_eq!(brownian_vector(0, &mut rng), Err(OptimError::ZeroDimension));
        assert!(levy_vector(0, &LevyParams::default(), &mut rng).is_err());
        assert!(uniform_vector(0, &mut rng).is_err());
        assert!(binary_mask(0, 0.2, &mut rng).is_err());
    }

    #[test]
    fn invalid_beta_rejected() {
        assert!(LevyParams::new(0.0).is_err());
        assert!(LevyParams::new(2.5).is_err());
        assert!(LevyParams::new(f64::NAN).is_err());
        assert!(LevyParams::new(2.0).is_ok());
        assert!(serde_json::from_str::<LevyParams>("3.0").is_err());
    }

    #[test]
    fn shapes_and_determinism() {
        let mut a = seeded_rng(11);
        let mut b = seeded_rng(11);
        let va = brownian_vector(3, &mut a).unwrap();
        assert_eq!(va.len(), 3);
        assert_eq!(va, brownian_vector(3, &mut b).unwrap());
    }

    #[test]
    fn zero_u_gives_zero_step() {
        for v in [-2.0, 0.0, 0.3, 10.0] {
            assert_eq!(mantegna_step(0.0, v, 1.5), 0.0);
        }
    }

    #[test]
    fn mask_extremes() {
        let mut rng = seeded_rng(5);
        assert!(binary_mask(50, 0.0, &mut rng).unwrap().iter().all(|&m| m == 0.0));
        assert!(binary_mask(50, 1.0, &mut rng).unwrap().iter().all(|&m| m == 1.0));
        assert!(binary_mask(5, 1.5, &mut rng).is_err());
        // with a zero uniform draw any positive rate switches every entry on
        let mut fixed = FixedDraws::zeros();
        assert_eq!(binary_mask(3, 0.2, &mut fixed).unwrap(), vec![1.0; 3]);
    }
}
