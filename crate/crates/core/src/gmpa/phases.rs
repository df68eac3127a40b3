//! The three position-update phases.
//!
//! Each `*_move` function computes one member's unclamped candidate from
//! already-known leaders and scalar knobs; the `phaseN_update` functions check
//! the iteration window, apply the move to every member and clamp.

use crate::error::{OptimError, Result};
use crate::kernels::{brownian_vector, levy_vector, uniform_vector, LevyParams};
use crate::population::{Leaders, Population};
use crate::problem::{clamp_in_place, Bounds};
use crate::rng::RandomSource;

/// Which third of the run an iteration falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `t < T/3`: Brownian steps around the leader centroid.
    Exploration,
    /// `T/3 ≤ t < 2T/3`: half the pack exploits with Lévy steps, half explores.
    Transition,
    /// `t ≥ 2T/3`: Lévy steps contracting onto α.
    Exploitation,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Exploration => "exploration (t < T/3)",
            Phase::Transition => "transition (T/3 <= t < 2T/3)",
            Phase::Exploitation => "exploitation (t >= 2T/3)",
        }
    }
}

/// Iteration `t` of a run with `max` iterations, `0 ≤ t ≤ max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterationClock {
    pub t: usize,
    pub max: usize,
}

impl IterationClock {
    pub fn new(t: usize, max: usize) -> Result<Self> {
        if max == 0 {
            return Err(OptimError::InvalidBudget("max iterations must be positive".into()));
        }
        if t > max {
            return Err(OptimError::IterationOutOfRange { t, max });
        }
        Ok(Self { t, max })
    }

    /// Integer comparisons keep the thirds exact for any `max`.
    pub fn phase(&self) -> Phase {
        if 3 * self.t < self.max {
            Phase::Exploration
        } else if 3 * self.t < 2 * self.max {
            Phase::Transition
        } else {
            Phase::Exploitation
        }
    }

    pub fn fraction(&self) -> f64 {
        self.t as f64 / self.max as f64
    }

    fn expect(&self, phase: Phase) -> Result<()> {
        if self.phase() == phase {
            Ok(())
        } else {
            Err(OptimError::WrongPhase { t: self.t, max: self.max, expected: phase.name() })
        }
    }
}

/// Brownian move around α, β and δ.
///
/// With `per_leader = false` a single α-referenced step is shared by all three
/// leaders; with `true` each leader gets its own step `R_B ⊗ (X_L − R_B ⊗ X)`.
/// One `R_B` and one `R` vector are drawn per call.
pub fn exploration_move(
    x: &[f64],
    leaders: &Leaders,
    p: f64,
    per_leader: bool,
    rng: &mut impl RandomSource,
) -> Result<Vec<f64>> {
    let d = x.len();
    let rb = brownian_vector(d, rng)?;
    let r = uniform_vector(d, rng)?;
    let (xa, xb, xd) = (&leaders.alpha.position, &leaders.beta.position, &leaders.delta.position);
    Ok((0..d)
        .map(|j| {
            let step = |leader: f64| rb[j] * (leader - rb[j] * x[j]);
            let shared = step(xa[j]);
            let (sa, sb, sd) = if per_leader { (shared, step(xb[j]), step(xd[j])) } else { (shared, shared, shared) };
            let x1 = xa[j] + p * r[j] * sa;
            let x2 = xb[j] + p * r[j] * sb;
            let x3 = xd[j] + p * r[j] * sd;
            (x1 + x2 + x3) / 3.0
        })
        .collect())
}

/// First-faction transition move: `X_α + P·R ⊗ [R_L ⊗ (X_α − R_L ⊗ X)]`.
pub fn levy_exploit_move(
    x: &[f64],
    alpha: &[f64],
    p: f64,
    levy: &LevyParams,
    rng: &mut impl RandomSource,
) -> Result<Vec<f64>> {
    let d = x.len();
    let rl = levy_vector(d, levy, rng)?;
    let r = uniform_vector(d, rng)?;
    Ok((0..d).map(|j| alpha[j] + p * r[j] * (rl[j] * (alpha[j] - rl[j] * x[j]))).collect())
}

/// Second-faction transition move: `X_α + P·CF·[R_B ⊗ (R_B ⊗ X_α − X)]`.
pub fn brownian_explore_move(
    x: &[f64],
    alpha: &[f64],
    p: f64,
    cf: f64,
    rng: &mut impl RandomSource,
) -> Result<Vec<f64>> {
    let rb = brownian_vector(x.len(), rng)?;
    Ok((0..x.len()).map(|j| alpha[j] + p * cf * (rb[j] * (rb[j] * alpha[j] - x[j]))).collect())
}

/// Final-phase move: `X_α + P·CF·[R_L ⊗ (R_L ⊗ X_α − X)]`.
pub fn levy_converge_move(
    x: &[f64],
    alpha: &[f64],
    p: f64,
    cf: f64,
    levy: &LevyParams,
    rng: &mut impl RandomSource,
) -> Result<Vec<f64>> {
    let rl = levy_vector(x.len(), levy, rng)?;
    Ok((0..x.len()).map(|j| alpha[j] + p * cf * (rl[j] * (rl[j] * alpha[j] - x[j]))).collect())
}

fn clamped(mut x: Vec<f64>, bounds: &Bounds) -> Vec<f64> {
    clamp_in_place(&mut x, bounds);
    x
}

fn check_dims(pop: &Population, bounds: &Bounds) -> Result<()> {
    for m in &pop.members {
        if m.position.len() != bounds.dim() {
            return Err(OptimError::DimensionMismatch { expected: bounds.dim(), actual: m.position.len() });
        }
    }
    Ok(())
}

/// Exploration-phase positions for every member.
pub fn phase1_update(
    pop: &Population,
    bounds: &Bounds,
    p: f64,
    per_leader: bool,
    clock: IterationClock,
    rng: &mut impl RandomSource,
) -> Result<Vec<Vec<f64>>> {
    clock.expect(Phase::Exploration)?;
    check_dims(pop, bounds)?;
    pop.members
        .iter()
        .map(|m| exploration_move(&m.position, &pop.leaders, p, per_leader, rng).map(|x| clamped(x, bounds)))
        .collect()
}

/// Transition-phase positions: members `0..n/2` take the Lévy exploit move,
/// the rest the CF-damped Brownian move.
pub fn phase2_update(
    pop: &Population,
    bounds: &Bounds,
    p: f64,
    levy: &LevyParams,
    clock: IterationClock,
    rng: &mut impl RandomSource,
) -> Result<Vec<Vec<f64>>> {
    clock.expect(Phase::Transition)?;
    check_dims(pop, bounds)?;
    let cf = crate::kernels::cf(clock.t, clock.max)?;
    let half = pop.len() / 2;
    let alpha = &pop.leaders.alpha.position;
    pop.members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let x = if i < half {
                levy_exploit_move(&m.position, alpha, p, levy, rng)?
            } else {
                brownian_explore_move(&m.position, alpha, p, cf, rng)?
            };
            Ok(clamped(x, bounds))
        })
        .collect()
}

/// Exploitation-phase positions for every member.
pub fn phase3_update(
    pop: &Population,
    bounds: &Bounds,
    p: f64,
    levy: &LevyParams,
    clock: IterationClock,
    rng: &mut impl RandomSource,
) -> Result<Vec<Vec<f64>>> {
    clock.expect(Phase::Exploitation)?;
    check_dims(pop, bounds)?;
    let cf = crate::kernels::cf(clock.t, clock.max)?;
    let alpha = &pop.leaders.alpha.position;
    pop.members
        .iter()
        .map(|m| levy_converge_move(&m.position, alpha, p, cf, levy, rng).map(|x| clamped(x, bounds)))
        .collect()
}
