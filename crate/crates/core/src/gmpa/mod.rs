//! GMPA: grey-wolf leadership driven by marine-predator step mechanics.
//!
//! One iteration `t = 1..=T` runs, in order:
//!
//! 1. the phase update for `t` ([`phases`]), evaluation, memory pass, leader refresh;
//! 2. FADs perturbation ([`fads`]), evaluation, memory pass, leader refresh;
//! 3. α-neighbourhood search ([`neighborhood`]).
//!
//! Initialization costs `n` evaluations and every iteration `2n + k`.

pub mod fads;
pub mod memory;
pub mod neighborhood;
pub mod phases;

use serde::{Deserialize, Serialize};

pub use fads::fads_perturbation;
pub use memory::{memory_update, MemoryMatrix};
pub use neighborhood::{alpha_neighbor, alpha_neighborhood_search, NeighborhoodOutcome};
pub use phases::{
    brownian_explore_move, exploration_move, levy_converge_move, levy_exploit_move, phase1_update, phase2_update,
    phase3_update, IterationClock, Phase,
};

use crate::error::{OptimError, Result};
use crate::kernels::{cf, LevyParams};
use crate::population::{Individual, Population};
use crate::problem::{Evaluator, ObjectiveProblem, DEFAULT_PENALTY};
use crate::rng::{RandomSource, SeededRng};
use crate::trace::{RunBudget, RunResult, RunTrace};

/// Straight-line schedule from `start` at `t = 0` to `end` at `t = T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearSchedule {
    pub start: f64,
    pub end: f64,
}

impl LinearSchedule {
    pub fn at(&self, t: usize, max: usize) -> f64 {
        let s = t as f64 / max as f64;
        self.start + (self.end - self.start) * s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GmpaConfig {
    /// Step scale `P`.
    pub p: f64,
    /// FADs probability.
    pub fads: f64,
    /// Lévy tail exponent.
    pub levy_beta: LevyParams,
    /// Keeps the neighbourhood weight finite at `t = T`.
    pub epsilon: f64,
    /// Neighbours per iteration; `None` means `min(n, 10)`.
    pub neighborhood_size: Option<usize>,
    /// Substituted for non-finite objective values.
    pub penalty_value: f64,
    /// Give β and δ their own exploration step instead of sharing α's.
    pub per_leader_stepsize: bool,
    /// Optional schedule overriding `p`.
    pub p_schedule: Option<LinearSchedule>,
    /// Optional schedule overriding `fads`.
    pub fads_schedule: Option<LinearSchedule>,
}

impl Default for GmpaConfig {
    fn default() -> Self {
        Self {
            p: 0.5,
            fads: 0.2,
            levy_beta: LevyParams::default(),
            epsilon: 1e-8,
            neighborhood_size: None,
            penalty_value: DEFAULT_PENALTY,
            per_leader_stepsize: false,
            p_schedule: None,
            fads_schedule: None,
        }
    }
}

impl GmpaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: String| Err(OptimError::InvalidParameter { name, reason });
        if !(self.p > 0.0) {
            return bad("p", format!("{} must be positive", self.p));
        }
        if !(0.0..=1.0).contains(&self.fads) {
            return bad("fads", format!("{} not in [0, 1]", self.fads));
        }
        if !(self.epsilon > 0.0) {
            return bad("epsilon", format!("{} must be positive", self.epsilon));
        }
        if self.neighborhood_size == Some(0) {
            return bad("neighborhood_size", "must be at least 1".into());
        }
        if let Some(s) = self.p_schedule {
            if !(s.start > 0.0 && s.end > 0.0) {
                return bad("p_schedule", "endpoints must be positive".into());
            }
        }
        if let Some(s) = self.fads_schedule {
            if !((0.0..=1.0).contains(&s.start) && (0.0..=1.0).contains(&s.end)) {
                return bad("fads_schedule", "endpoints must lie in [0, 1]".into());
            }
        }
        Ok(())
    }

    pub fn neighbors_for(&self, population: usize) -> usize {
        self.neighborhood_size.unwrap_or(population.min(10))
    }

    pub fn p_at(&self, t: usize, max: usize) -> f64 {
        self.p_schedule.map_or(self.p, |s| s.at(t, max))
    }

    pub fn fads_at(&self, t: usize, max: usize) -> f64 {
        self.fads_schedule.map_or(self.fads, |s| s.at(t, max))
    }
}

/// Fitness of every member before and after one memory pass.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryPass {
    pub before: Vec<f64>,
    pub after: Vec<f64>,
}

/// Instrumentation emitted after every iteration of [`run_gmpa_observed`].
#[derive(Debug, Clone, PartialEq)]
pub struct IterationReport {
    pub t: usize,
    pub phase: Phase,
    pub cf: f64,
    pub phase_memory: MemoryPass,
    pub fads_memory: MemoryPass,
    pub alpha_before_search: f64,
    pub alpha_after_search: f64,
    pub evaluations: u64,
}

pub fn run_gmpa(problem: &dyn ObjectiveProblem, budget: &RunBudget, config: &GmpaConfig) -> Result<RunResult> {
    run_gmpa_observed(problem, budget, config, &mut |_| {})
}

pub(crate) fn random_population(ev: &mut Evaluator<'_>, n: usize, rng: &mut impl RandomSource) -> Vec<Individual> {
    let bounds = ev.bounds();
    (0..n)
        .map(|_| {
            let x: Vec<f64> =
                bounds.lower().iter().zip(bounds.upper()).map(|(&lo, &hi)| (lo + rng.uniform() * (hi - lo)).min(hi)).collect();
            let f = ev.eval(&x);
            Individual::new(x, f)
        })
        .collect()
}

pub(crate) fn evaluate_positions(ev: &mut Evaluator<'_>, members: &mut [Individual], positions: Vec<Vec<f64>>) {
    for (m, x) in members.iter_mut().zip(positions) {
        m.fitness = ev.eval(&x);
        m.position = x;
    }
}

pub(crate) fn memory_pass(members: &mut [Individual], memory: &mut MemoryMatrix) -> Result<MemoryPass> {
    let before = members.iter().map(|m| m.fitness).collect();
    memory_update(members, memory)?;
    Ok(MemoryPass { before, after: members.iter().map(|m| m.fitness).collect() })
}

/// [`run_gmpa`] with a callback invoked after every iteration.
pub fn run_gmpa_observed(
    problem: &dyn ObjectiveProblem,
    budget: &RunBudget,
    config: &GmpaConfig,
    observer: &mut dyn FnMut(&IterationReport),
) -> Result<RunResult> {
    budget.validate()?;
    config.validate()?;
    let (n, max) = (budget.population, budget.iterations);
    let k = config.neighbors_for(n);
    let levy = config.levy_beta;

    let mut rng = SeededRng::new(budget.seed);
    let mut ev = Evaluator::new(problem, config.penalty_value);
    let bounds = problem.bounds();

    let mut pop = Population::new(random_population(&mut ev, n, &mut rng))?;
    let mut memory = MemoryMatrix::from_members(&pop.members);
    let mut trace = RunTrace::with_capacity(max);

    for t in 1..=max {
        let clock = IterationClock::new(t, max)?;
        let p = config.p_at(t, max);
        let fads = config.fads_at(t, max);
        let cf_t = cf(t, max)?;
        let phase = clock.phase();

        let moved = match phase {
            Phase::Exploration => phase1_update(&pop, bounds, p, config.per_leader_stepsize, clock, &mut rng)?,
            Phase::Transition => phase2_update(&pop, bounds, p, &levy, clock, &mut rng)?,
            Phase::Exploitation => phase3_update(&pop, bounds, p, &levy, clock, &mut rng)?,
        };
        evaluate_positions(&mut ev, &mut pop.members, moved);
        let phase_memory = memory_pass(&mut pop.members, &mut memory)?;
        pop.refresh_leaders()?;

        let current: Vec<Vec<f64>> = pop.members.iter().map(|m| m.position.clone()).collect();
        let perturbed = fads_perturbation(&current, bounds, fads, cf_t, &mut rng)?;
        evaluate_positions(&mut ev, &mut pop.members, perturbed);
        let fads_memory = memory_pass(&mut pop.members, &mut memory)?;
        pop.refresh_leaders()?;

        let alpha_before_search = pop.leaders.alpha.fitness;
        alpha_neighborhood_search(&mut pop, bounds, clock, config.epsilon, k, &mut rng, &mut |x| ev.eval(x))?;
        let alpha_after_search = pop.leaders.alpha.fitness;

        trace.record(t, ev.count(), alpha_after_search);
        observer(&IterationReport {
            t,
            phase,
            cf: cf_t,
            phase_memory,
            fads_memory,
            alpha_before_search,
            alpha_after_search,
            evaluations: ev.count(),
        });
    }

    trace.best_position = pop.leaders.alpha.position.clone();
    Ok(RunResult { best: pop.leaders.alpha, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{Bounds, FnProblem};

    fn sphere(d: usize) -> impl ObjectiveProblem {
        FnProblem::new("sphere", Bounds::uniform(d, -100.0, 100.0).unwrap(), |x: &[f64]| x.iter().map(|v| v * v).sum())
    }

    #[test]
    fn evaluation_accounting() {
        let cfg = GmpaConfig { neighborhood_size: Some(5), ..Default::default() };
        let res = run_gmpa(&sphere(3), &RunBudget::new(10, 9, 1).unwrap(), &cfg).unwrap();
        assert_eq!(res.trace.len(), 9);
        assert_eq!(res.trace.records.last().unwrap().evaluations, 10 + 9 * (10 + 10 + 5));
        assert_eq!(res.trace.records[0].evaluations, 10 + 25);
    }

    #[test]
    fn default_neighborhood_size() {
        let cfg = GmpaConfig::default();
        assert_eq!(cfg.neighbors_for(30), 10);
        assert_eq!(cfg.neighbors_for(6), 6);
    }

    #[test]
    fn config_validation() {
        assert!(GmpaConfig { p: 0.0, ..Default::default() }.validate().is_err());
        assert!(GmpaConfig { fads: 1.2, ..Default::default() }.validate().is_err());
        assert!(GmpaConfig { epsilon: 0.0, ..Default::default() }.validate().is_err());
        assert!(GmpaConfig { neighborhood_size: Some(0), ..Default::default() }.validate().is_err());
        let cfg: GmpaConfig = serde_json::from_str(r#"{"p": 0.3, "levy_beta": 1.2}"#).unwrap();
        assert_eq!(cfg.p, 0.3);
        assert_eq!(cfg.levy_beta.beta(), 1.2);
        assert!(serde_json::from_str::<GmpaConfig>(r#"{"levy_beta": 4}"#).is_err());
        assert!(serde_json::from_str::<GmpaConfig>(r#"{"bogus": 4}"#).is_err());
    }

    #[test]
    fn schedules_override_constants() {
        let cfg = GmpaConfig { p_schedule: Some(LinearSchedule { start: 1.0, end: 0.1 }), ..Default::default() };
        assert_eq!(cfg.p_at(0, 10), 1.0);
        assert!((cfg.p_at(10, 10) - 0.1).abs() < 1e-15);
        assert_eq!(cfg.fads_at(3, 10), 0.2);
    }

    #[test]
    fn same_seed_same_trace() {
        let b = RunBudget::new(12, 30, 77).unwrap();
        let a = run_gmpa(&sphere(4), &b, &GmpaConfig::default()).unwrap();
        let c = run_gmpa(&sphere(4), &b, &GmpaConfig::default()).unwrap();
        assert_eq!(a, c);
        assert!(a.trace.is_monotone());
    }
}
