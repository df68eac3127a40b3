//! Seeded (problem × algorithm × trial) grid runner.
//!
//! Output layout under the results directory:
//!
//! ```text
//! traces/<problem>/<algorithm>/trial000_seed<seed>.csv   iteration,evals,best_fitness
//! finals/<problem>__<algorithm>.csv                      trial,seed,best_fitness
//! comparison.csv, comparison.json                        per-cell stats and p-values
//! metadata.json                                          effective config, problems, seeds, version
//! timing.json                                            wall clock and worker count
//! ```
//!
//! Everything except `timing.json` depends only on the config.

mod config;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use config::{BudgetConfig, ExperimentConfig, ProblemSources};

use crate::benchfuncs::{default_suite, load_bench_suite, BenchError, BenchSpec};
use crate::error::OptimError;
use crate::mga::{load_mga_problem, MgaError, MgaProblem};
use crate::problem::{Bounds, ObjectiveProblem};
use crate::stats::{comparison_table, table_to_csv, table_to_json, ComparisonRow, StatsError, TrialSet};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Bench(#[from] BenchError),

    #[error("{path}: {source}")]
    Mga { path: PathBuf, source: MgaError },

    #[error("run failed: {0}")]
    Optim(#[from] OptimError),

    #[error(transparent)]
    Stats(#[from] StatsError),

    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

impl ExperimentError {
    /// True for errors caused by the user's input rather than the program.
    pub fn is_validation(&self) -> bool {
        matches!(self, ExperimentError::Config { .. } | ExperimentError::Io { .. } | ExperimentError::Bench(_) | ExperimentError::Mga { .. })
    }
}

/// A problem from either source.
#[derive(Debug, Clone)]
pub enum GridProblem {
    Bench(BenchSpec),
    Mga(MgaProblem),
}

impl GridProblem {
    pub fn kind(&self) -> &'static str {
        match self {
            GridProblem::Bench(_) => "bench",
            GridProblem::Mga(_) => "mga",
        }
    }
}

impl ObjectiveProblem for GridProblem {
    fn name(&self) -> &str {
        match self {
            GridProblem::Bench(p) => p.name(),
            GridProblem::Mga(p) => ObjectiveProblem::name(p),
        }
    }

    fn bounds(&self) -> &Bounds {
        match self {
            GridProblem::Bench(p) => p.bounds(),
            GridProblem::Mga(p) => ObjectiveProblem::bounds(p),
        }
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            GridProblem::Bench(p) => p.evaluate(x),
            GridProblem::Mga(p) => p.evaluate(x),
        }
    }
}

/// Loads every problem named by the config, checking that names are unique.
pub fn resolve_problems(sources: &ProblemSources) -> Result<Vec<GridProblem>, ExperimentError> {
    let mut problems = Vec::new();
    match sources.bench_suite.as_deref() {
        Some("default") => problems.extend(default_suite().into_iter().map(GridProblem::Bench)),
        Some(path) => problems.extend(load_bench_suite(path)?.into_iter().map(GridProblem::Bench)),
        None => {}
    }
    for path in &sources.mga {
        let p = load_mga_problem(path).map_err(|source| ExperimentError::Mga { path: path.clone(), source })?;
        problems.push(GridProblem::Mga(p));
    }
    for (i, p) in problems.iter().enumerate() {
        let name = p.name();
        if name.is_empty() || name.contains(['/', '\\']) || name == "." || name == ".." {
            return Err(ExperimentError::Config { field: "problems".into(), reason: format!("`{name}` is not usable as a file name") });
        }
        if problems[..i].iter().any(|q| q.name() == name) {
            return Err(ExperimentError::Config { field: "problems".into(), reason: format!("duplicate problem name `{name}`") });
        }
    }
    if problems.is_empty() {
        return Err(ExperimentError::Config { field: "problems".into(), reason: "no problems loaded".into() });
    }
    Ok(problems)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub output_dir: PathBuf,
    pub finals: Vec<TrialSet>,
    /// Empty when each cell has a single trial.
    pub table: Vec<ComparisonRow>,
    pub runs: usize,
}

#[derive(Serialize)]
struct ProblemMeta<'a> {
    name: &'a str,
    kind: &'static str,
    dim: usize,
    lower: &'a [f64],
    upper: &'a [f64],
}

#[derive(Serialize)]
struct Metadata<'a> {
    version: &'static str,
    config: &'a ExperimentConfig,
    reference: &'a str,
    problems: Vec<ProblemMeta<'a>>,
    seeds: Vec<u64>,
}

#[derive(Serialize)]
struct Timing {
    wall_clock_seconds: f64,
    workers: usize,
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), ExperimentError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|source| ExperimentError::Output { path: dir.to_path_buf(), source })?;
    }
    std::fs::write(path, contents).map_err(|source| ExperimentError::Output { path: path.to_path_buf(), source })
}

pub fn trace_path(out: &Path, problem: &str, algorithm: &str, trial: usize, seed: u64) -> PathBuf {
    out.join("traces").join(problem).join(algorithm).join(format!("trial{trial:03}_seed{seed}.csv"))
}

/// Runs the grid on `workers` threads and writes the results under `out`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path, workers: usize) -> Result<ExperimentOutcome, ExperimentError> {
    cfg.validate()?;
    if workers == 0 {
        return Err(ExperimentError::Config { field: "workers".into(), reason: "must be at least 1".into() });
    }
    let problems = resolve_problems(&cfg.problems)?;
    let started = Instant::now();
    std::fs::create_dir_all(out).map_err(|source| ExperimentError::Output { path: out.to_path_buf(), source })?;

    let jobs: Vec<(usize, usize, usize)> = (0..problems.len())
        .flat_map(|p| (0..cfg.algorithms.len()).flat_map(move |a| (0..cfg.trials).map(move |k| (p, a, k))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| ExperimentError::Pool(e.to_string()))?;
    let finals: Vec<f64> = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, a, k)| {
                let problem = &problems[p];
                let algorithm = &cfg.algorithms[a];
                let budget = cfg.run_budget(k)?;
                let result = algorithm.run(problem, &budget)?;
                write(&trace_path(out, problem.name(), algorithm.name(), k, budget.seed), result.trace.to_csv())?;
                Ok(result.best.fitness)
            })
            .collect::<Result<Vec<f64>, ExperimentError>>()
    })?;

    let mut sets = Vec::with_capacity(problems.len() * cfg.algorithms.len());
    for (p, problem) in problems.iter().enumerate() {
        for (a, algorithm) in cfg.algorithms.iter().enumerate() {
            let start = (p * cfg.algorithms.len() + a) * cfg.trials;
            let values = finals[start..start + cfg.trials].to_vec();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["trial", "seed", "best_fitness"]).expect("in-memory write");
            for (k, v) in values.iter().enumerate() {
                w.write_record([k.to_string(), cfg.seed_for(k).to_string(), v.to_string()]).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            write(&out.join("finals").join(format!("{}__{}.csv", problem.name(), algorithm.name())), bytes)?;
            sets.push(TrialSet { algorithm: algorithm.name().into(), problem: problem.name().into(), values });
        }
    }

    let reference = cfg.reference_name();
    let table = if cfg.trials >= 2 { comparison_table(&sets, reference)? } else { Vec::new() };
    write(&out.join("comparison.csv"), table_to_csv(&table))?;
    write(&out.join("comparison.json"), table_to_json(&table))?;

    let metadata = Metadata {
        version: VERSION,
        config: cfg,
        reference,
        problems: problems
            .iter()
            .map(|p| ProblemMeta { name: p.name(), kind: p.kind(), dim: p.dimension(), lower: p.bounds().lower(), upper: p.bounds().upper() })
            .collect(),
        seeds: (0..cfg.trials).map(|k| cfg.seed_for(k)).collect(),
    };
    write(&out.join("metadata.json"), serde_json::to_string_pretty(&metadata).expect("metadata serializes"))?;
    let timing = Timing { wall_clock_seconds: started.elapsed().as_secs_f64(), workers };
    write(&out.join("timing.json"), serde_json::to_string_pretty(&timing).expect("timing serializes"))?;

    Ok(ExperimentOutcome { output_dir: out.to_path_buf(), finals: sets, table, runs: jobs.len() })
}
