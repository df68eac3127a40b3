//! Uniform random search, the floor every optimizer should clear.

use crate::error::{OptimError, Result};
use crate::gmpa::random_population;
use crate::population::Individual;
use crate::problem::{Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::SeededRng;
use crate::trace::{RunResult, RunTrace};

/// Samples `evaluations` uniform points, recording the trace every `batch` samples.
pub fn run_random_search(problem: &dyn ObjectiveProblem, evaluations: u64, batch: u64, seed: u64) -> Result<RunResult> {
    if evaluations == 0 || batch == 0 {
        return Err(OptimError::InvalidBudget("random search needs positive evaluations and batch".into()));
    }
    let mut rng = SeededRng::new(seed);
    let mut ev = Evaluator::new(problem, DEFAULT_PENALTY);
    let mut best: Option<Individual> = None;
    let mut trace = RunTrace::default();
    let mut iteration = 0;
    while ev.count() < evaluations {
        let take = batch.min(evaluations - ev.count()) as usize;
        for cand in random_population(&mut ev, take, &mut rng) {
            if best.as_ref().is_none_or(|b| cand.fitness < b.fitness) {
                best = Some(cand);
            }
        }
        iteration += 1;
        trace.record(iteration, ev.count(), best.as_ref().expect("sampled").fitness);
    }
    let best = best.expect("at least one sample");
    trace.best_position = best.position.clone();
    Ok(RunResult { best, trace })
}
