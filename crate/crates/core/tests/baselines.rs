mod common;

use gmpa_core::baselines::de::{de_trial, pick_donors};
use gmpa_core::baselines::gwo::{gwo_a, gwo_move};
use gmpa_core::baselines::mpa::{prey_brownian_move, prey_levy_move};
use gmpa_core::baselines::pso::pso_step;
use gmpa_core::baselines::{run_de, run_gwo, run_mpa, run_pso, run_random_search, DeConfig, GwoConfig, MpaConfig, PsoConfig};
use gmpa_core::benchfuncs::default_suite;
use gmpa_core::kernels::LevyParams;
use gmpa_core::{run_gmpa, seeded_rng, Bounds, FixedDraws, GmpaConfig, RunBudget};

use common::traces::leaders_123;
use common::{median, sphere};

#[test]
fn gwo_schedule_endpoints() {
    assert_eq!(gwo_a(0, 200), 2.0);
    assert_eq!(gwo_a(200, 200), 0.0);
    assert_eq!(gwo_a(100, 200), 1.0);
}

#[test]
fn gwo_neutral_coefficients_give_centroid() {
    // r = 0.5 gives A = 2a·0.5 − a = 0 and C = 1
    for a in [0.0, 0.7, 2.0] {
        let x = gwo_move(&[-4.0], &leaders_123(), a, &mut FixedDraws::new(0.5, 0.0, 0.0));
        assert_eq!(x, vec![2.0]);
    }
}

#[test]
fn pso_fixpoint() {
    let b = Bounds::uniform(2, -5.0, 5.0).unwrap();
    let mut x = vec![0.3, -1.2];
    let mut v = vec![0.0, 0.0];
    let anchor = x.clone();
    let mut rng = seeded_rng(6);
    for _ in 0..50 {
        pso_step(&mut x, &mut v, &anchor, &anchor, &PsoConfig::default(), &b, &mut rng);
    }
    assert_eq!(x, anchor);
    assert_eq!(v, vec![0.0, 0.0]);
}

#[test]
fn pso_velocity_is_clamped() {
    let b = Bounds::uniform(1, -10.0, 10.0).unwrap();
    let mut x = vec![-10.0];
    let mut v = vec![0.0];
    pso_step(&mut x, &mut v, &[10.0], &[10.0], &PsoConfig::default(), &b, &mut FixedDraws::new(1.0, 0.0, 0.0));
    assert!((v[0] - 0.2 * 20.0).abs() < 1e-12);
    assert!((x[0] + 6.0).abs() < 1e-12);
}

#[test]
fn de_without_scale_or_crossover_moves_one_coordinate() {
    // F = 0 is outside the validated range but isolates the operator
    let cfg = DeConfig { scale: 0.0, crossover: 0.0 };
    let positions: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 100.0 + i as f64, 200.0 + i as f64, 300.0 + i as f64]).collect();
    let b = Bounds::uniform(4, -1e3, 1e3).unwrap();
    let mut rng = seeded_rng(30);
    for round in 0..50 {
        let target = round % 5;
        let mut probe = rng.clone();
        let (a, _, _) = pick_donors(5, target, &mut probe);
        let trial = de_trial(&positions, target, &cfg, &b, &mut rng);
        let changed: Vec<usize> = (0..4).filter(|&j| trial[j] != positions[target][j]).collect();
        assert_eq!(changed.len(), 1);
        assert_eq!(trial[changed[0]], positions[a][changed[0]]);
    }
}

#[test]
fn mpa_zero_noise_moves() {
    let levy = LevyParams::default();
    // R_B = 0 and R_L = 0 leave the prey in place
    assert_eq!(prey_brownian_move(&[3.0, -1.0], &[0.0, 0.0], 0.5, &mut FixedDraws::zeros()).unwrap(), vec![3.0, -1.0]);
    assert_eq!(prey_levy_move(&[3.0, -1.0], &[0.0, 0.0], 0.5, &levy, &mut FixedDraws::zeros()).unwrap(), vec![3.0, -1.0]);
    // R_B = R = 1: 3 + 0.5·(1 − 3)
    assert_eq!(prey_brownian_move(&[3.0], &[1.0], 0.5, &mut FixedDraws::new(1.0, 1.0, 0.0)).unwrap(), vec![2.0]);
}

#[test]
fn config_validation() {
    assert!(PsoConfig { inertia: 1.5, ..Default::default() }.validate().is_err());
    assert!(PsoConfig { cognitive: 0.0, ..Default::default() }.validate().is_err());
    assert!(DeConfig { scale: 2.5, crossover: 0.5 }.validate().is_err());
    assert!(DeConfig { scale: 0.5, crossover: 1.5 }.validate().is_err());
    assert!(MpaConfig { fads: -0.1, ..Default::default() }.validate().is_err());
}

fn sphere_medians(run: impl Fn(u64) -> f64) -> f64 {
    median(&(0..10).map(run).collect::<Vec<_>>())
}

#[test]
fn gwo_solves_sphere() {
    let p = sphere(2, 100.0);
    let m = sphere_medians(|s| run_gwo(&p, &RunBudget::new(30, 200, s).unwrap(), &GwoConfig::default()).unwrap().best.fitness);
    assert!(m < 1e-2, "{m}");
}

#[test]
fn de_solves_sphere() {
    let p = sphere(2, 100.0);
    let m = sphere_medians(|s| run_de(&p, &RunBudget::new(30, 200, s).unwrap(), &DeConfig::default()).unwrap().best.fitness);
    assert!(m < 1e-3, "{m}");
}

#[test]
fn random_search_oracle_stays_above_thresholds() {
    let p = sphere(2, 100.0);
    let m = sphere_medians(|s| run_random_search(&p, 30 + 200 * 30, 30, s).unwrap().best.fitness);
    assert!(m > 1e-2, "{m}");
}

#[test]
fn random_search_contract() {
    let p = sphere(3, 1.0);
    let res = run_random_search(&p, 95, 10, 4).unwrap();
    assert_eq!(res.trace.len(), 10);
    assert_eq!(res.trace.records.last().unwrap().evaluations, 95);
    assert!(res.trace.is_monotone());
    assert!(run_random_search(&p, 0, 10, 4).is_err());
}

#[test]
fn gmpa_not_worse_than_mpa_on_rastrigin() {
    let rastrigin = default_suite().into_iter().find(|s| s.id == "rastrigin").unwrap();
    let mut gmpa = Vec::new();
    let mut mpa = Vec::new();
    for seed in 0..30 {
        let budget = RunBudget::new(30, 500, seed).unwrap();
        gmpa.push(run_gmpa(&rastrigin, &budget, &GmpaConfig::default()).unwrap().best.fitness);
        mpa.push(run_mpa(&rastrigin, &budget, &MpaConfig::default()).unwrap().best.fitness);
    }
    assert!(median(&gmpa) <= median(&mpa), "gmpa {} mpa {}", median(&gmpa), median(&mpa));
}

#[test]
fn pso_and_mpa_traces() {
    let p = sphere(3, 10.0);
    let budget = RunBudget::new(10, 40, 2).unwrap();
    for res in [run_pso(&p, &budget, &PsoConfig::default()).unwrap(), run_mpa(&p, &budget, &MpaConfig::default()).unwrap()] {
        assert!(res.trace.is_monotone());
        assert_eq!(res.trace.best_position, res.best.position);
    }
}
