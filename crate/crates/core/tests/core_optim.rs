mod common;

use std::sync::atomic::{AtomicU64, Ordering};

use gmpa_core::{
    clamp_to_bounds, seeded_rng, update_leaders, Algorithm, Bounds, FnProblem, Individual, RandomSource, RunBudget,
};
use proptest::prelude::*;

use common::sphere;

fn members(fitness: &[f64]) -> Vec<Individual> {
    fitness.iter().enumerate().map(|(i, &f)| Individual::new(vec![i as f64], f)).collect()
}

#[test]
fn clamp_examples() {
    let unit = Bounds::uniform(1, 0.0, 1.0).unwrap();
    assert_eq!(clamp_to_bounds(&[0.5], &unit).unwrap(), vec![0.5]);
    assert_eq!(clamp_to_bounds(&[-3.0], &unit).unwrap(), vec![0.0]);
    let square = Bounds::uniform(2, -1.0, 1.0).unwrap();
    assert_eq!(clamp_to_bounds(&[2.0, -2.0], &square).unwrap(), vec![1.0, -1.0]);
    assert!(clamp_to_bounds(&[0.0, 0.0, 0.0], &square).is_err());
}

#[test]
fn leader_examples() {
    let l = update_leaders(&members(&[3.0, 1.0, 2.0, 5.0]), None).unwrap();
    assert_eq!([l.alpha.fitness, l.beta.fitness, l.delta.fitness], [1.0, 2.0, 3.0]);

    let tied = update_leaders(&members(&[7.0; 5]), None).unwrap();
    assert_eq!(tied.alpha.position, vec![0.0]);
    assert_eq!(tied.beta.position, vec![1.0]);
    assert_eq!(tied.delta.position, vec![2.0]);

    let prev = update_leaders(&members(&[0.5, 0.9, 1.0, 1.1]), None).unwrap();
    let next = update_leaders(&members(&[0.7, 0.8, 0.9, 1.0]), Some(&prev)).unwrap();
    assert_eq!(next.alpha.fitness, 0.5);
}

#[test]
fn unevaluated_member_is_rejected() {
    let mut m = members(&[1.0, 2.0, 3.0, 4.0]);
    m[2] = Individual::unevaluated(vec![0.0]);
    assert!(update_leaders(&m, None).is_err());
}

#[test]
fn rng_streams() {
    let draw = |seed| {
        let mut rng = seeded_rng(seed);
        (0..1000).map(|_| rng.uniform()).collect::<Vec<_>>()
    };
    assert_eq!(draw(42), draw(42));
    assert_ne!(draw(1), draw(2));

    let mut rng = seeded_rng(11);
    let mean = (0..1_000_000).map(|_| rng.uniform()).sum::<f64>() / 1e6;
    assert!((mean - 0.5).abs() < 0.01, "{mean}");
}

#[test]
fn traces_are_monotone_for_every_algorithm() {
    let problem = sphere(5, 10.0);
    let budget = RunBudget::new(12, 60, 3).unwrap();
    for alg in Algorithm::all_defaults() {
        let res = alg.run(&problem, &budget).unwrap();
        assert_eq!(res.trace.len(), 60, "{}", alg.name());
        assert!(res.trace.is_monotone(), "{}", alg.name());
        assert_eq!(res.trace.final_best(), Some(res.best.fitness), "{}", alg.name());
    }
}

#[test]
fn every_evaluated_point_is_in_bounds() {
    let bounds = Bounds::new(vec![-1.0, 0.0, 2.0], vec![1.0, 0.5, 2.5]).unwrap();
    let outside = AtomicU64::new(0);
    let seen = AtomicU64::new(0);
    let check = bounds.clone();
    // optimum at a corner pulls every algorithm against the walls
    let problem = FnProblem::new("corner", bounds, |x: &[f64]| {
        seen.fetch_add(1, Ordering::Relaxed);
        if !check.contains(x) {
            outside.fetch_add(1, Ordering::Relaxed);
        }
        (x[0] + 5.0).powi(2) + (x[1] - 3.0).powi(2) + x[2]
    });
    let budget = RunBudget::new(10, 45, 9).unwrap();
    for alg in Algorithm::all_defaults() {
        alg.run(&problem, &budget).unwrap();
    }
    assert!(seen.load(Ordering::Relaxed) > 0);
    assert_eq!(outside.load(Ordering::Relaxed), 0);
}

#[test]
fn same_seed_same_trace() {
    let problem = sphere(4, 5.0);
    let budget = RunBudget::new(8, 30, 77).unwrap();
    for alg in Algorithm::all_defaults() {
        let a = alg.run(&problem, &budget).unwrap();
        let b = alg.run(&problem, &budget).unwrap();
        assert_eq!(a.trace.to_csv(), b.trace.to_csv(), "{}", alg.name());
        assert_eq!(a.best.position, b.best.position, "{}", alg.name());
    }
}

#[test]
fn budget_limits() {
    assert!(RunBudget::new(3, 10, 0).is_err());
    assert!(RunBudget::new(4, 2, 0).is_err());
    assert!(RunBudget::new(4, 3, 0).is_ok());
}

proptest! {
    #[test]
    fn clamp_lands_inside_and_is_idempotent(
        x in prop::collection::vec(-1e6f64..1e6, 1..8),
        lo in -100.0f64..0.0,
        width in 1e-3f64..100.0,
    ) {
        let b = Bounds::uniform(x.len(), lo, lo + width).unwrap();
        let once = clamp_to_bounds(&x, &b).unwrap();
        prop_assert!(b.contains(&once));
        prop_assert_eq!(clamp_to_bounds(&once, &b).unwrap(), once.clone());
        for (c, v) in once.iter().zip(&x) {
            if lo <= *v && *v <= lo + width {
                prop_assert_eq!(c, v);
            }
        }
    }

    #[test]
    fn leaders_are_ordered_and_minimal(fitness in prop::collection::vec(-1e3f64..1e3, 4..20)) {
        let l = update_leaders(&members(&fitness), None).unwrap();
        prop_assert!(l.alpha.fitness <= l.beta.fitness && l.beta.fitness <= l.delta.fitness);
        let min = fitness.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert_eq!(l.alpha.fitness, min);
        prop_assert!(l.alpha.position != l.beta.position && l.beta.position != l.delta.position);
    }

    #[test]
    fn sticky_alpha_never_worsens(
        first in prop::collection::vec(-1e3f64..1e3, 4..12),
        second in prop::collection::vec(-1e3f64..1e3, 4..12),
    ) {
        let prev = update_leaders(&members(&first), None).unwrap();
        let next = update_leaders(&members(&second), Some(&prev)).unwrap();
        prop_assert!(next.alpha.fitness <= prev.alpha.fitness);
        prop_assert!(next.alpha.fitness <= next.beta.fitness);
    }
}
