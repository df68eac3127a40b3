//! Global-best particle swarm with inertia weight.

use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};
use crate::gmpa::random_population;
use crate::population::Individual;
use crate::problem::{clamp_in_place, Bounds, Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::{RandomSource, SeededRng};
use crate::trace::{RunBudget, RunResult, RunTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoConfig {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of each coordinate's range.
    pub velocity_clamp: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self { inertia: 0.729, cognitive: 1.49445, social: 1.49445, velocity_clamp: 0.2 }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(OptimError::InvalidParameter { name, reason });
        if !(0.0..=1.0).contains(&self.inertia) {
            return bad("inertia", format!("{} not in [0, 1]", self.inertia));
        }
        if !(self.cognitive > 0.0 && self.social > 0.0) {
            return bad("cognitive/social", "must be positive".into());
        }
        if !(self.velocity_clamp > 0.0) {
            return bad("velocity_clamp", format!("{} must be positive", self.velocity_clamp));
        }
        Ok(())
    }
}

/// Advances one particle in place.
pub fn pso_step(
    x: &mut [f64],
    v: &mut [f64],
    pbest: &[f64],
    gbest: &[f64],
    config: &PsoConfig,
    bounds: &Bounds,
    rng: &mut impl RandomSource,
) {
    for j in 0..x.len() {
        let r1 = rng.uniform();
        let r2 = rng.uniform();
        let vmax = config.velocity_clamp * bounds.width(j);
        let vel = config.inertia * v[j] + config.cognitive * r1 * (pbest[j] - x[j]) + config.social * r2 * (gbest[j] - x[j]);
        v[j] = vel.clamp(-vmax, vmax);
        x[j] += v[j];
    }
    clamp_in_place(x, bounds);
}

pub fn run_pso(problem: &dyn ObjectiveProblem, budget: &RunBudget, config: &PsoConfig) -> Result<RunResult> {
    budget.validate()?;
    config.validate()?;
    let (n, max) = (budget.population, budget.iterations);
    let mut rng = SeededRng::new(budget.seed);
    let mut ev = Evaluator::new(problem, DEFAULT_PENALTY);
    let bounds = problem.bounds();
    let d = bounds.dim();

    let mut particles = random_population(&mut ev, n, &mut rng);
    let mut velocities = vec![vec![0.0; d]; n];
    let mut pbest: Vec<Individual> = particles.clone();
    let mut gbest = best_of(&pbest).clone();
    let mut trace = RunTrace::with_capacity(max);

    for t in 1..=max {
        for i in 0..n {
            pso_step(&mut particles[i].position, &mut velocities[i], &pbest[i].position, &gbest.position, config, bounds, &mut rng);
            particles[i].fitness = ev.eval(&particles[i].position);
            if particles[i].fitness < pbest[i].fitness {
                pbest[i] = particles[i].clone();
            }
        }
        let round_best = best_of(&pbest);
        if round_best.fitness < gbest.fitness {
            gbest = round_best.clone();
        }
        trace.record(t, ev.count(), gbest.fitness);
    }

    trace.best_position = gbest.position.clone();
    Ok(RunResult { best: gbest, trace })
}

fn best_of(members: &[Individual]) -> &Individual {
    members.iter().fold(&members[0], |best, m| if m.fitness < best.fitness { m } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn converged_particle_is_stationary() {
        let b = Bounds::uniform(3, -5.0, 5.0).unwrap();
        let mut x = vec![1.0, -2.0, 0.5];
        let mut v = vec![0.0; 3];
        let anchor = x.clone();
        let mut rng = seeded_rng(4);
        for _ in 0..10 {
            pso_step(&mut x, &mut v, &anchor, &anchor, &PsoConfig::default(), &b, &mut rng);
        }
        assert_eq!(x, anchor);
        assert_eq!(v, vec![0.0; 3]);
    }

    #[test]
    fn velocity_is_clamped() {
        let b = Bounds::uniform(1, 0.0, 10.0).unwrap();
        let mut x = vec![0.0];
        let mut v = vec![100.0];
        pso_step(&mut x, &mut v, &[0.0], &[0.0], &PsoConfig::default(), &b, &mut seeded_rng(0));
        assert!((v[0] - 2.0).abs() < 1e-12);
        assert!((x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn config_checks() {
        assert!(PsoConfig { inertia: 1.5, ..Default::default() }.validate().is_err());
        assert!(PsoConfig { social: 0.0, ..Default::default() }.validate().is_err());
    }
}
