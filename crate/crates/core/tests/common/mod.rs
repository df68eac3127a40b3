//! Oracles shared by the integration tests. Nothing here calls into the
//! library's physics or special functions.

#![allow(dead_code)]

use gmpa_core::{Bounds, FnProblem, ObjectiveProblem};

pub fn sphere(d: usize, half_width: f64) -> impl ObjectiveProblem {
    FnProblem::new("sphere", Bounds::uniform(d, -half_width, half_width).unwrap(), |x: &[f64]| x.iter().map(|v| v * v).sum())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Lanczos approximation (g = 7, 9 terms), ~15 significant digits for x > 0.
pub fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Mantegna σ_u evaluated with [`lanczos_gamma`].
pub fn sigma_u_oracle(beta: f64) -> f64 {
    let num = lanczos_gamma(1.0 + beta) * (std::f64::consts::PI * beta / 2.0).sin();
    let den = lanczos_gamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    (num / den).powf(1.0 / beta)
}

/// Least-squares slope of log survival against log |step| between the 0.99
/// and 0.9999 quantiles.
pub fn tail_slope(samples: &[f64]) -> f64 {
    let mut a: Vec<f64> = samples.iter().map(|x| x.abs()).collect();
    a.sort_by(f64::total_cmp);
    let n = a.len();
    let (lo, hi) = ((0.99 * n as f64) as usize, (0.9999 * n as f64) as usize);
    let points: Vec<(f64, f64)> = (lo..hi)
        .step_by(((hi - lo) / 200).max(1))
        .map(|i| (a[i].ln(), ((n - i) as f64 / n as f64).ln()))
        .collect();
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x, sy + y));
    let (mx, my) = (sx / m, sy / m);
    let cov: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    cov / var
}

fn stumpff_c(z: f64) -> f64 {
    if z.abs() < 0.1 {
        // 1/2! − z/4! + z²/6! − …
        let mut term = 0.5;
        let mut sum = term;
        for k in 1..12 {
            term *= -z / ((2 * k + 1) as f64 * (2 * k + 2) as f64);
            sum += term;
        }
        sum
    } else if z > 0.0 {
        (1.0 - z.sqrt().cos()) / z
    } else {
        ((-z).sqrt().cosh() - 1.0) / -z
    }
}

fn stumpff_s(z: f64) -> f64 {
    if z.abs() < 0.1 {
        // 1/3! − z/5! + z²/7! − …
        let mut term = 1.0 / 6.0;
        let mut sum = term;
        for k in 1..12 {
            term *= -z / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
            sum += term;
        }
        sum
    } else if z > 0.0 {
        let s = z.sqrt();
        (s - s.sin()) / (s * s * s)
    } else {
        let s = (-z).sqrt();
        (s.sinh() - s) / (s * s * s)
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Two-body propagation of `(r0, v0)` by `dt` with universal variables.
pub fn propagate(r0: [f64; 3], v0: [f64; 3], dt: f64, mu: f64) -> ([f64; 3], [f64; 3]) {
    let sqmu = mu.sqrt();
    let r0n = norm(r0);
    let vr0 = dot(r0, v0) / r0n;
    let alpha = 2.0 / r0n - dot(v0, v0) / mu;

    let mut chi = if alpha > 0.0 { sqmu * alpha * dt } else { sqmu * dt / r0n };
    for _ in 0..500 {
        let z = alpha * chi * chi;
        let (c, s) = (stumpff_c(z), stumpff_s(z));
        let f = r0n * vr0 / sqmu * chi * chi * c + (1.0 - alpha * r0n) * chi.powi(3) * s + r0n * chi - sqmu * dt;
        let df = r0n * vr0 / sqmu * chi * (1.0 - z * s) + (1.0 - alpha * r0n) * chi * chi * c + r0n;
        let mut step = f / df;
        // keep the hyperbolic branch from overshooting into overflow
        if step.abs() > 0.5 * chi.abs().max(1.0) {
            step = step.signum() * 0.5 * chi.abs().max(1.0);
        }
        chi -= step;
        if step.abs() <= 1e-15 * chi.abs().max(1e-300) {
            break;
        }
    }
    let z = alpha * chi * chi;
    let (c, s) = (stumpff_c(z), stumpff_s(z));
    let f = 1.0 - chi * chi / r0n * c;
    let g = dt - chi.powi(3) / sqmu * s;
    let r: [f64; 3] = std::array::from_fn(|k| f * r0[k] + g * v0[k]);
    let rn = norm(r);
    let fdot = sqmu / (rn * r0n) * (z * s - 1.0) * chi;
    let gdot = 1.0 - chi * chi / rn * c;
    let v: [f64; 3] = std::array::from_fn(|k| fdot * r0[k] + gdot * v0[k]);
    (r, v)
}

/// Launch excess, arrival excess and capture burn of a Hohmann transfer
/// between circular coplanar orbits of radii `a1 < a2`.
pub fn hohmann_total(mu_sun: f64, a1: f64, a2: f64, mu_target: f64, rp: f64, e: f64) -> f64 {
    let at = 0.5 * (a1 + a2);
    let launch = (mu_sun / a1).sqrt() * ((a2 / at).sqrt() - 1.0);
    let arrive = (mu_sun / a2).sqrt() * (1.0 - (a1 / at).sqrt());
    let capture = (arrive * arrive + 2.0 * mu_target / rp).sqrt() - (mu_target / rp * (1.0 + e)).sqrt();
    launch + capture
}

pub fn hohmann_days(mu_sun: f64, a1: f64, a2: f64) -> f64 {
    std::f64::consts::PI * ((0.5 * (a1 + a2)).powi(3) / mu_sun).sqrt() / 86_400.0
}

/// All `k`-subsets of `0..n` as index vectors.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub mod traces {
    //! Scalar hand traces with injected draws: `(label, computed, expected)`.

    use gmpa_core::gmpa::{
        alpha_neighbor, brownian_explore_move, exploration_move, fads_perturbation, levy_converge_move, IterationClock,
    };
    use gmpa_core::kernels::LevyParams;
    use gmpa_core::{Bounds, FixedDraws, Individual, Leaders, ScriptedDraws};

    pub fn leaders_123() -> Leaders {
        Leaders {
            alpha: Individual::new(vec![1.0], 0.0),
            beta: Individual::new(vec![2.0], 1.0),
            delta: Individual::new(vec![3.0], 2.0),
        }
    }

    pub fn all() -> Vec<(&'static str, f64, f64)> {
        let levy = LevyParams::default();
        let ones = || FixedDraws::new(1.0, 1.0, 1.0);

        // stepsize = 1·(1 − 1·0.5) = 0.5; X1, X2, X3 = 1.25, 2.25, 3.25
        let phase1 = exploration_move(&[0.5], &leaders_123(), 0.5, false, &mut ones()).unwrap()[0];
        let centroid = exploration_move(&[0.5], &leaders_123(), 0.5, false, &mut FixedDraws::new(0.7, 0.0, 0.0)).unwrap()[0];
        // stepsize = 1·(1·2 − 1) = 1; 2 + 0.5·0.5·1
        let phase2 = brownian_explore_move(&[1.0], &[2.0], 0.5, 0.5, &mut ones()).unwrap()[0];
        // stepsize = 1·(1·1 − 0) = 1; 1 + 0.5·0.2·1
        let phase3 = levy_converge_move(&[0.0], &[1.0], 0.5, 0.2, &levy, &mut ones()).unwrap()[0];
        // r1 = 0 ≤ r2 = 0.5, R = 0, mask draw 0 < 0.2: X += 1·(−1 + 0)·1
        let mut draws = ScriptedDraws::new(&[0.0, 0.5, 0.0, 0.0], &[], &[], 0.9);
        let fads = fads_perturbation(&[vec![0.0], vec![0.5]], &Bounds::uniform(1, -1.0, 1.0).unwrap(), 0.2, 1.0, &mut draws)
            .unwrap()[0][0];
        // W = 0.5²·0.5·1 = 0.125, φ = 2, τ = 0.125·2·1 = 0.25
        let neighbor = alpha_neighbor(
            &[1.0],
            &[0.0],
            &Bounds::uniform(1, -2.0, 2.0).unwrap(),
            IterationClock::new(5, 10).unwrap(),
            0.0,
            &mut ones(),
        )[0];

        vec![
            ("exploration move, R_B = R = 1", phase1, 2.25),
            ("exploration move, R_B = 0", centroid, 2.0),
            ("transition Brownian faction, CF = 0.5", phase2, 2.25),
            ("exploitation move, CF = 0.2", phase3, 1.1),
            ("FADs mask branch, R = 0", fads, -1.0),
            ("alpha neighbour at t = T/2", neighbor, 1.25),
        ]
    }
}

pub mod orbits {
    //! Synthetic bodies and Lambert instances in canonical units.

    use std::f64::consts::PI;

    use gmpa_core::mga::{lambert, BodyModel, Direction, KeplerianElements, MgaError, MgaProblem};
    use gmpa_core::{RandomSource, SeededRng};

    use super::{hohmann_days, norm, propagate};

    pub fn unit_body(a: f64, rate: f64, l0: f64) -> BodyModel {
        BodyModel {
            name: format!("a{a}"),
            elements: KeplerianElements {
                a,
                e: 0.0,
                inclination: 0.0,
                raan: 0.0,
                lon_perihelion: 0.0,
                mean_longitude: l0,
                mean_longitude_rate: rate,
                epoch: 0.0,
            },
            mu: 1e-6,
            rp_min: 1e-4,
        }
    }

    fn random_direction(rng: &mut SeededRng) -> [f64; 3] {
        loop {
            let v = [2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0];
            let n = norm(v);
            if n > 0.1 && n <= 1.0 {
                return v.map(|c| c / n);
            }
        }
    }

    pub struct Instance {
        pub r1: [f64; 3],
        pub r2: [f64; 3],
        pub tof: f64,
        pub direction: Direction,
    }

    pub fn random_instances(count: usize, seed: u64) -> Vec<Instance> {
        let mut rng = SeededRng::new(seed);
        (0..count)
            .map(|_| {
                let r1 = random_direction(&mut rng).map(|c| c * (0.5 + 1.5 * rng.uniform()));
                let r2 = random_direction(&mut rng).map(|c| c * (0.5 + 1.5 * rng.uniform()));
                let tof = 0.1 + 9.9 * rng.uniform();
                let direction = if rng.uniform() < 0.5 { Direction::Prograde } else { Direction::Retrograde };
                Instance { r1, r2, tof, direction }
            })
            .collect()
    }

    /// Inner body at (a1, 0, 0) at t = 0, outer body placed to sit at (−a2, 0, 0)
    /// after the Hohmann transfer time.
    pub fn hohmann_problem(a1: f64, a2: f64) -> (MgaProblem, [f64; 2], f64) {
        let mu_sun = 1.0;
        let n1 = 86_400.0 * (mu_sun / a1.powi(3)).sqrt();
        let n2 = 86_400.0 * (mu_sun / a2.powi(3)).sqrt();
        let tof = hohmann_days(mu_sun, a1, a2);
        let inner = unit_body(a1, n1, 0.0);
        let outer = unit_body(a2, n2, PI - n2 * tof);
        let problem = MgaProblem::new("hohmann", mu_sun, vec![inner, outer], [-1e-3, 1e-3], &[[0.5 * tof, 2.0 * tof]], 1e-2, 0.5).unwrap();
        (problem, [0.0, tof], mu_sun)
    }

    /// Solves `count` random instances and propagates each `v1` for the time
    /// of flight. Returns (arrivals within 1e-6 relative, feasible, worst miss).
    pub fn lambert_oracle(count: usize, seed: u64) -> (usize, usize, f64) {
        let (mut good, mut feasible, mut worst) = (0, 0, 0.0f64);
        for inst in random_instances(count, seed) {
            match lambert(inst.r1, inst.r2, inst.tof, 1.0, inst.direction) {
                Err(MgaError::DegenerateGeometry { .. }) => continue,
                Err(_) => feasible += 1,
                Ok(sol) => {
                    feasible += 1;
                    let (r, _) = propagate(inst.r1, sol.v1, inst.tof, 1.0);
                    let d = norm([r[0] - inst.r2[0], r[1] - inst.r2[1], r[2] - inst.r2[2]]) / norm(inst.r2);
                    worst = worst.max(d);
                    if d < 1e-6 {
                        good += 1;
                    }
                }
            }
        }
        (good, feasible, worst)
    }
}
