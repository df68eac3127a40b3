//! DE/rand/1/bin with generation-synchronous greedy selection.

use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};
use crate::gmpa::random_population;
use crate::population::Individual;
use crate::problem::{clamp_in_place, Bounds, Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::{RandomSource, SeededRng};
use crate::trace::{RunBudget, RunResult, RunTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeConfig {
    /// Differential weight `F`.
    pub scale: f64,
    /// Crossover rate `CR`.
    pub crossover: f64,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self { scale: 0.5, crossover: 0.9 }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0 && self.scale <= 2.0) {
            return Err(OptimError::InvalidParameter { name: "scale", reason: format!("{} not in (0, 2]", self.scale) });
        }
        if !(0.0..=1.0).contains(&self.crossover) {
            return Err(OptimError::InvalidParameter {
                name: "crossover",
                reason: format!("{} not in [0, 1]", self.crossover),
            });
        }
        Ok(())
    }
}

/// Indices `(a, b, c)`, pairwise distinct and different from `target`.
pub fn pick_donors(n: usize, target: usize, rng: &mut impl RandomSource) -> (usize, usize, usize) {
    debug_assert!(n >= 4);
    let mut pool: Vec<usize> = (0..n).filter(|&i| i != target).collect();
    let mut take = || pool.remove(rng.index(pool.len()));
    let a = take();
    let b = take();
    let c = take();
    (a, b, c)
}

/// Trial vector for member `target`: `x_a + F·(x_b − x_c)` crossed binomially
/// with the target, with coordinate `j_rand` always taken from the mutant.
pub fn de_trial(
    positions: &[Vec<f64>],
    target: usize,
    config: &DeConfig,
    bounds: &Bounds,
    rng: &mut impl RandomSource,
) -> Vec<f64> {
    let (a, b, c) = pick_donors(positions.len(), target, rng);
    let d = bounds.dim();
    let j_rand = rng.index(d);
    let mut trial = positions[target].clone();
    for (j, slot) in trial.iter_mut().enumerate() {
        if rng.uniform() < config.crossover || j == j_rand {
            *slot = positions[a][j] + config.scale * (positions[b][j] - positions[c][j]);
        }
    }
    clamp_in_place(&mut trial, bounds);
    trial
}

pub fn run_de(problem: &dyn ObjectiveProblem, budget: &RunBudget, config: &DeConfig) -> Result<RunResult> {
    budget.validate()?;
    config.validate()?;
    let (n, max) = (budget.population, budget.iterations);
    let mut rng = SeededRng::new(budget.seed);
    let mut ev = Evaluator::new(problem, DEFAULT_PENALTY);
    let bounds = problem.bounds();

    let mut members = random_population(&mut ev, n, &mut rng);
    let mut best = best_of(&members).clone();
    let mut trace = RunTrace::with_capacity(max);

    for t in 1..=max {
        let snapshot: Vec<Vec<f64>> = members.iter().map(|m| m.position.clone()).collect();
        for i in 0..n {
            let trial = de_trial(&snapshot, i, config, bounds, &mut rng);
            let f = ev.eval(&trial);
            if f <= members[i].fitness {
                members[i] = Individual::new(trial, f);
            }
        }
        let round_best = best_of(&members);
        if round_best.fitness < best.fitness {
            best = round_best.clone();
        }
        trace.record(t, ev.count(), best.fitness);
    }

    trace.best_position = best.position.clone();
    Ok(RunResult { best, trace })
}

fn best_of(members: &[Individual]) -> &Individual {
    members.iter().fold(&members[0], |best, m| if m.fitness < best.fitness { m } else { best })
}
