//! Canonical Marine Predators Algorithm with a single elite.
//!
//! Differs from GMPA in that the elite is the lone guide, the first phase and
//! the exploiting half of the second phase step from the prey's own position,
//! and there is no neighbourhood search. FADs and memory are shared with GMPA.

use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};
use crate::gmpa::{
    brownian_explore_move, evaluate_positions, fads_perturbation, levy_converge_move, memory_update,
    random_population, IterationClock, MemoryMatrix, Phase,
};
use crate::kernels::{brownian_vector, cf, levy_vector, uniform_vector, LevyParams};
use crate::population::Individual;
use crate::problem::{clamp_in_place, Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::{RandomSource, SeededRng};
use crate::trace::{RunBudget, RunResult, RunTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MpaConfig {
    pub p: f64,
    pub fads: f64,
    pub levy_beta: LevyParams,
}

impl Default for MpaConfig {
    fn default() -> Self {
        Self { p: 0.5, fads: 0.2, levy_beta: LevyParams::default() }
    }
}

impl MpaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0) {
            return Err(OptimError::InvalidParameter { name: "p", reason: format!("{} must be positive", self.p) });
        }
        if !(0.0..=1.0).contains(&self.fads) {
            return Err(OptimError::InvalidParameter { name: "fads", reason: format!("{} not in [0, 1]", self.fads) });
        }
        Ok(())
    }
}

/// `X + P·R ⊗ [R_B ⊗ (E − R_B ⊗ X)]`.
pub fn prey_brownian_move(x: &[f64], elite: &[f64], p: f64, rng: &mut impl RandomSource) -> Result<Vec<f64>> {
    let d = x.len();
    let rb = brownian_vector(d, rng)?;
    let r = uniform_vector(d, rng)?;
    Ok((0..d).map(|j| x[j] + p * r[j] * (rb[j] * (elite[j] - rb[j] * x[j]))).collect())
}

/// `X + P·R ⊗ [R_L ⊗ (E − R_L ⊗ X)]`.
pub fn prey_levy_move(
    x: &[f64],
    elite: &[f64],
    p: f64,
    levy: &LevyParams,
    rng: &mut impl RandomSource,
) -> Result<Vec<f64>> {
    let d = x.len();
    let rl = levy_vector(d, levy, rng)?;
    let r = uniform_vector(d, rng)?;
    Ok((0..d).map(|j| x[j] + p * r[j] * (rl[j] * (elite[j] - rl[j] * x[j]))).collect())
}

fn refresh_elite(elite: &mut Individual, members: &[Individual]) {
    for m in members {
        if m.fitness < elite.fitness {
            *elite = m.clone();
        }
    }
}

pub fn run_mpa(problem: &dyn ObjectiveProblem, budget: &RunBudget, config: &MpaConfig) -> Result<RunResult> {
    budget.validate()?;
    config.validate()?;
    let (n, max) = (budget.population, budget.iterations);
    let levy = config.levy_beta;
    let mut rng = SeededRng::new(budget.seed);
    let mut ev = Evaluator::new(problem, DEFAULT_PENALTY);
    let bounds = problem.bounds();

    let mut members = random_population(&mut ev, n, &mut rng);
    let mut elite = members[0].clone();
    refresh_elite(&mut elite, &members);
    let mut memory = MemoryMatrix::from_members(&members);
    let mut trace = RunTrace::with_capacity(max);
    let half = n / 2;

    for t in 1..=max {
        let clock = IterationClock::new(t, max)?;
        let cf_t = cf(t, max)?;
        let e = &elite.position;
        let mut moved = Vec::with_capacity(n);
        for (i, m) in members.iter().enumerate() {
            let x = &m.position;
            let mut next = match clock.phase() {
                Phase::Exploration => prey_brownian_move(x, e, config.p, &mut rng)?,
                Phase::Transition if i < half => prey_levy_move(x, e, config.p, &levy, &mut rng)?,
                Phase::Transition => brownian_explore_move(x, e, config.p, cf_t, &mut rng)?,
                Phase::Exploitation => levy_converge_move(x, e, config.p, cf_t, &levy, &mut rng)?,
            };
            clamp_in_place(&mut next, bounds);
            moved.push(next);
        }
        evaluate_positions(&mut ev, &mut members, moved);
        memory_update(&mut members, &mut memory)?;
        refresh_elite(&mut elite, &members);

        let current: Vec<Vec<f64>> = members.iter().map(|m| m.position.clone()).collect();
        let perturbed = fads_perturbation(&current, bounds, config.fads, cf_t, &mut rng)?;
        evaluate_positions(&mut ev, &mut members, perturbed);
        memory_update(&mut members, &mut memory)?;
        refresh_elite(&mut elite, &members);

        trace.record(t, ev.count(), elite.fitness);
    }

    trace.best_position = elite.position.clone();
    Ok(RunResult { best: elite, trace })
}
