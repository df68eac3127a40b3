//! Local search around α, run once at the end of every iteration.
//!
//! Neighbour `j` is anchored on member `i = j mod n`:
//!
//! ```text
//! φ    = lb + rand(1,d) ⊗ (ub − lb)
//! W    = (1 − t/T + ε)^(2·randn) · (rand(1,d)·t/T) ⊗ rand(1,d)
//! τ    = W ⊗ (rand·φ − rand·X_i) · ‖X_α − X_i‖₂
//! NX_α = X_α + randn(1,d) ⊗ τ
//! ```
//!
//! Draw order per neighbour: `d` uniforms for φ, one normal for the exponent,
//! two blocks of `d` uniforms for W, two scalar uniforms, `d` normals.

use super::phases::IterationClock;
use crate::error::{OptimError, Result};
use crate::population::{Individual, Population};
use crate::problem::{clamp_in_place, Bounds};
use crate::rng::RandomSource;

/// Builds one clamped neighbour of `alpha` anchored on `anchor`.
pub fn alpha_neighbor(
    alpha: &[f64],
    anchor: &[f64],
    bounds: &Bounds,
    clock: IterationClock,
    epsilon: f64,
    rng: &mut impl RandomSource,
) -> Vec<f64> {
    let d = alpha.len();
    let (lo, hi) = (bounds.lower(), bounds.upper());
    let phi: Vec<f64> = (0..d).map(|j| lo[j] + rng.uniform() * (hi[j] - lo[j])).collect();

    let frac = clock.fraction();
    let decay = (1.0 - frac + epsilon).powf(2.0 * rng.normal());
    let w1: Vec<f64> = (0..d).map(|_| rng.uniform() * frac).collect();
    let w2: Vec<f64> = (0..d).map(|_| rng.uniform()).collect();

    let pull = rng.uniform();
    let push = rng.uniform();
    let dist = alpha.iter().zip(anchor).map(|(a, x)| (a - x) * (a - x)).sum::<f64>().sqrt();

    let mut out: Vec<f64> = (0..d)
        .map(|j| {
            let w = decay * w1[j] * w2[j];
            let tau = w * (pull * phi[j] - push * anchor[j]) * dist;
            alpha[j] + rng.normal() * tau
        })
        .collect();
    clamp_in_place(&mut out, bounds);
    out
}

/// What the local search did to the leaders.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodOutcome {
    pub best_neighbor: Individual,
    pub improved: bool,
}

/// Evaluates `k` neighbours of α and promotes the best one when it beats α.
pub fn alpha_neighborhood_search(
    pop: &mut Population,
    bounds: &Bounds,
    clock: IterationClock,
    epsilon: f64,
    k: usize,
    rng: &mut impl RandomSource,
    evaluate: &mut dyn FnMut(&[f64]) -> f64,
) -> Result<NeighborhoodOutcome> {
    if k == 0 {
        return Err(OptimError::InvalidParameter { name: "neighborhood_size", reason: "must be at least 1".into() });
    }
    if pop.is_empty() {
        return Err(OptimError::PopulationTooSmall { needed: 1, actual: 0 });
    }
    let n = pop.len();
    let mut best: Option<Individual> = None;
    for j in 0..k {
        let anchor = &pop.members[j % n].position;
        let position = alpha_neighbor(&pop.leaders.alpha.position, anchor, bounds, clock, epsilon, rng);
        let fitness = evaluate(&position);
        if best.as_ref().is_none_or(|b| fitness < b.fitness) {
            best = Some(Individual::new(position, fitness));
        }
    }
    let best = best.expect("k >= 1");
    let improved = best.fitness < pop.leaders.alpha.fitness;
    if improved {
        pop.leaders.promote(best.clone());
    }
    Ok(NeighborhoodOutcome { best_neighbor: best, improved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Leaders;
    use crate::rng::{seeded_rng, FixedDraws};

    #[test]
    fn anchor_at_alpha_returns_alpha() {
        let b = Bounds::uniform(2, -5.0, 5.0).unwrap();
        let clock = IterationClock::new(3, 10).unwrap();
        let mut rng = seeded_rng(9);
        for _ in 0..20 {
            let nx = alpha_neighbor(&[1.0, -2.0], &[1.0, -2.0], &b, clock, 1e-8, &mut rng);
            assert_eq!(nx, vec![1.0, -2.0]);
        }
    }

    #[test]
    fn hand_trace_single_dimension() {
        // rand = 1, randn = 1, t/T = 1/2, ε = 0: W = 0.5² · 0.5 · 1 = 0.125,
        // φ = ub = 2, τ = 0.125 · (2 − 0) · 1 = 0.25, NX = 1.25
        let b = Bounds::uniform(1, -2.0, 2.0).unwrap();
        let nx = alpha_neighbor(&[1.0], &[0.0], &b, IterationClock::new(5, 10).unwrap(), 0.0, &mut FixedDraws::new(1.0, 1.0, 0.0));
        assert!((nx[0] - 1.25).abs() < 1e-12);
    }

    fn pop() -> Population {
        let members = vec![
            Individual::new(vec![0.0], 0.0),
            Individual::new(vec![1.0], 1.0),
            Individual::new(vec![2.0], 4.0),
            Individual::new(vec![3.0], 9.0),
        ];
        let leaders = Leaders { alpha: members[1].clone(), beta: members[2].clone(), delta: members[3].clone() };
        Population { members, leaders }
    }

    #[test]
    fn better_neighbor_replaces_alpha() {
        let mut p = pop();
        let b = Bounds::uniform(1, -2.0, 2.0).unwrap();
        let mut f = |x: &[f64]| (x[0] - 1.25).abs();
        let out = alpha_neighborhood_search(&mut p, &b, IterationClock::new(5, 10).unwrap(), 0.0, 1, &mut FixedDraws::new(1.0, 1.0, 0.0), &mut f).unwrap();
        // neighbour 0 is anchored on member 0 (x = 0) and lands on 1.25
        assert!(out.improved);
        assert_eq!(p.leaders.alpha.position, vec![1.25]);
        assert_eq!(p.leaders.beta.position, vec![1.0]);
        assert_eq!(p.leaders.delta.position, vec![2.0]);
    }

    #[test]
    fn worse_neighbor_leaves_leaders() {
        let mut p = pop();
        let before = p.leaders.clone();
        let b = Bounds::uniform(1, -2.0, 2.0).unwrap();
        let mut f = |_: &[f64]| 100.0;
        let out = alpha_neighborhood_search(&mut p, &b, IterationClock::new(5, 10).unwrap(), 1e-8, 3, &mut seeded_rng(1), &mut f).unwrap();
        assert!(!out.improved);
        assert_eq!(p.leaders, before);
    }

    #[test]
    fn zero_neighbors_is_an_error() {
        let mut p = pop();
        let b = Bounds::uniform(1, -2.0, 2.0).unwrap();
        let mut f = |_: &[f64]| 0.0;
        assert!(alpha_neighborhood_search(&mut p, &b, IterationClock::new(5, 10).unwrap(), 1e-8, 0, &mut seeded_rng(1), &mut f).is_err());
    }
}
