use std::f64::consts::{E, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BenchError;

/// Textbook analytic test functions, evaluated on the shifted (and possibly
/// rotated) argument `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunction {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Zakharov,
    Levy,
    SchafferF7,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 8] = [
        BaseFunction::Sphere,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Zakharov,
        BaseFunction::Levy,
        BaseFunction::SchafferF7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Levy => "levy",
            BaseFunction::SchafferF7 => "schaffer_f7",
        }
    }

    /// Conventional search interval, applied to every coordinate.
    pub fn default_interval(self) -> (f64, f64) {
        match self {
            BaseFunction::Sphere | BaseFunction::SchafferF7 => (-100.0, 100.0),
            BaseFunction::Rosenbrock => (-30.0, 30.0),
            BaseFunction::Rastrigin => (-5.12, 5.12),
            BaseFunction::Ackley => (-32.768, 32.768),
            BaseFunction::Griewank => (-600.0, 600.0),
            BaseFunction::Zakharov => (-5.0, 10.0),
            BaseFunction::Levy => (-10.0, 10.0),
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::SchafferF7 => 2,
            _ => 1,
        }
    }

    /// Unshifted global minimizer; the minimum value is 0 for every function.
    pub fn argmin(self, d: usize) -> Vec<f64> {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::Levy => vec![1.0; d],
            _ => vec![0.0; d],
        }
    }

    pub fn eval(self, z: &[f64]) -> f64 {
        let d = z.len() as f64;
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::Rosenbrock => z
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                .sum(),
            BaseFunction::Rastrigin => 10.0 * d + z.iter().map(|v| v * v - 10.0 * (TAU * v).cos()).sum::<f64>(),
            BaseFunction::Ackley => {
                let sq = z.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = z.iter().map(|v| (TAU * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
            }
            BaseFunction::Griewank => {
                let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = z.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
                sum - prod + 1.0
            }
            BaseFunction::Zakharov => {
                let sq = z.iter().map(|v| v * v).sum::<f64>();
                let lin = z.iter().enumerate().map(|(i, v)| 0.5 * (i + 1) as f64 * v).sum::<f64>();
                sq + lin.powi(2) + lin.powi(4)
            }
            BaseFunction::Levy => {
                let w: Vec<f64> = z.iter().map(|v| 1.0 + (v - 1.0) / 4.0).collect();
                let last = w[w.len() - 1];
                let head = (PI * w[0]).sin().powi(2);
                let mid: f64 = w[..w.len() - 1]
                    .iter()
                    .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
                    .sum();
                head + mid + (last - 1.0).powi(2) * (1.0 + (TAU * last).sin().powi(2))
            }
            BaseFunction::SchafferF7 => {
                let terms: f64 = z
                    .windows(2)
                    .map(|w| {
                        let s = (w[0] * w[0] + w[1] * w[1]).sqrt();
                        s.sqrt() * ((50.0 * s.powf(0.2)).sin() + 1.0)
                    })
                    .sum();
                (terms / (d - 1.0)).powi(2)
            }
        }
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseFunction {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaseFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| BenchError::UnknownFunction(s.to_string()))
    }
}
