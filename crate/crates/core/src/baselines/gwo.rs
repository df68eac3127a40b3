//! Canonical Grey Wolf Optimizer.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gmpa::{evaluate_positions, random_population};
use crate::population::{Leaders, Population};
use crate::problem::{clamp_in_place, Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::{RandomSource, SeededRng};
use crate::trace::{RunBudget, RunResult, RunTrace};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GwoConfig {}

/// Encircling coefficient `a = 2·(1 − t/T)`, from 2 at `t = 0` to 0 at `t = T`.
pub fn gwo_a(t: usize, max: usize) -> f64 {
    2.0 * (1.0 - t as f64 / max as f64)
}

/// One wolf's move: mean over α, β, δ of `X_L − A·|C·X_L − X|` with fresh
/// `A = 2a·r1 − a`, `C = 2·r2` per leader and coordinate.
pub fn gwo_move(x: &[f64], leaders: &Leaders, a: f64, rng: &mut impl RandomSource) -> Vec<f64> {
    let guides = [&leaders.alpha.position, &leaders.beta.position, &leaders.delta.position];
    (0..x.len())
        .map(|j| {
            guides
                .iter()
                .map(|g| {
                    let big_a = 2.0 * a * rng.uniform() - a;
                    let c = 2.0 * rng.uniform();
                    g[j] - big_a * (c * g[j] - x[j]).abs()
                })
                .sum::<f64>()
                / 3.0
        })
        .collect()
}

pub fn run_gwo(problem: &dyn ObjectiveProblem, budget: &RunBudget, _config: &GwoConfig) -> Result<RunResult> {
    budget.validate()?;
    let (n, max) = (budget.population, budget.iterations);
    let mut rng = SeededRng::new(budget.seed);
    let mut ev = Evaluator::new(problem, DEFAULT_PENALTY);
    let bounds = problem.bounds();

    let mut pop = Population::new(random_population(&mut ev, n, &mut rng))?;
    let mut trace = RunTrace::with_capacity(max);

    for t in 1..=max {
        // a runs 2 -> 0 across the iterations actually executed
        let a = gwo_a(t - 1, max - 1);
        let moved: Vec<Vec<f64>> = pop
            .members
            .iter()
            .map(|m| {
                let mut x = gwo_move(&m.position, &pop.leaders, a, &mut rng);
                clamp_in_place(&mut x, bounds);
                x
            })
            .collect();
        evaluate_positions(&mut ev, &mut pop.members, moved);
        pop.refresh_leaders()?;
        trace.record(t, ev.count(), pop.leaders.alpha.fitness);
    }

    trace.best_position = pop.leaders.alpha.position.clone();
    Ok(RunResult { best: pop.leaders.alpha, trace })
}
