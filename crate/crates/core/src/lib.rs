//! Population-based optimizers built around a hybrid of the Grey Wolf
//! Optimizer and the Marine Predators Algorithm (GMPA), together with the
//! pieces needed to compare it against classic baselines:
//!
//! * [`problem`], [`population`], [`rng`], [`trace`]: the shared substrate
//!   (box-bounded objectives, leader hierarchy, seeded randomness, run traces).
//! * [`kernels`]: Brownian / Lévy / uniform step generators and the CF decay.
//! * [`gmpa`]: the hybrid optimizer.
//! * [`baselines`]: GWO, MPA, PSO, DE and uniform random search.
//! * [`benchfuncs`]: shifted/biased analytic test functions and suite files.
//! * [`mga`]: a patched-conics multi-gravity-assist ΔV objective.
//! * [`stats`]: descriptive statistics and the Wilcoxon rank-sum test.
//! * [`experiment`]: the seeded experiment grid runner used by the CLI.

pub mod algorithm;
pub mod baselines;
pub mod benchfuncs;
pub mod error;
pub mod experiment;
pub mod gmpa;
pub mod kernels;
pub mod mga;
pub mod population;
pub mod problem;
pub mod rng;
pub mod stats;
pub mod trace;

pub use algorithm::Algorithm;
pub use error::OptimError;
pub use gmpa::{run_gmpa, GmpaConfig};
pub use population::{update_leaders, Individual, Leaders, Population};
pub use problem::{clamp_to_bounds, Bounds, FnProblem, ObjectiveProblem};
pub use rng::{seeded_rng, FixedDraws, RandomSource, ScriptedDraws, SeededRng};
pub use trace::{RunBudget, RunResult, RunTrace, TraceRecord};
