use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::algorithm::Algorithm;
use crate::trace::RunBudget;

/// The experiment grid, read from JSON.
///
/// ```json
/// {
///   "problems": {"bench_suite": "default", "mga": ["cassini1.json"]},
///   "algorithms": [{"name": "gmpa"}, {"name": "gwo"}],
///   "trials": 30,
///   "budget": {"population": 30, "iterations": 1000},
///   "base_seed": 1,
///   "output_dir": "results",
///   "reference": "gmpa"
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problems: ProblemSources,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub budget: BudgetConfig,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Algorithm the p-values compare against; defaults to `gmpa` when it is
    /// in the grid and to the first algorithm otherwise.
    #[serde(default)]
    pub reference: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSources {
    /// `"default"` for the shipped suite, or a suite file path.
    #[serde(default)]
    pub bench_suite: Option<String>,
    #[serde(default)]
    pub mga: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    pub population: usize,
    pub iterations: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        Self { population: 30, iterations: 1000 }
    }
}

fn default_trials() -> usize {
    30
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::Config { field: "config".into(), reason: e.to_string() })
    }

    /// Reads a config file; relative problem paths resolve against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ExperimentError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io { path: path.to_path_buf(), source })?;
        let mut cfg = Self::parse(&text)?;
        if let Some(dir) = path.parent() {
            cfg.resolve_relative_to(dir);
        }
        Ok(cfg)
    }

    pub fn resolve_relative_to(&mut self, dir: &Path) {
        if let Some(suite) = &self.problems.bench_suite {
            if suite != "default" && Path::new(suite).is_relative() {
                self.problems.bench_suite = Some(dir.join(suite).to_string_lossy().into_owned());
            }
        }
        for p in &mut self.problems.mga {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let field = |f: &str, reason: String| Err(ExperimentError::Config { field: f.into(), reason });
        if self.problems.bench_suite.is_none() && self.problems.mga.is_empty() {
            return field("problems", "at least one problem source is required".into());
        }
        if self.algorithms.is_empty() {
            return field("algorithms", "at least one algorithm is required".into());
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].iter().any(|b| b.name() == a.name()) {
                return field("algorithms", format!("`{}` listed twice", a.name()));
            }
            if let Err(e) = a.validate() {
                return field(&format!("algorithms[{i}].config"), e.to_string());
            }
        }
        if self.trials == 0 {
            return field("trials", "must be at least 1".into());
        }
        if let Err(e) = self.run_budget(0) {
            return field("budget", e.to_string());
        }
        if self.base_seed.checked_add(self.trials as u64).is_none() {
            return field("base_seed", "base_seed + trials overflows".into());
        }
        if let Some(r) = &self.reference {
            if !self.algorithms.iter().any(|a| a.name() == r) {
                return field("reference", format!("`{r}` is not in algorithms"));
            }
        }
        Ok(())
    }

    pub fn reference_name(&self) -> &str {
        match &self.reference {
            Some(r) => r,
            None if self.algorithms.iter().any(|a| a.name() == "gmpa") => "gmpa",
            None => self.algorithms.first().map(|a| a.name()).unwrap_or("gmpa"),
        }
    }

    pub fn seed_for(&self, trial: usize) -> u64 {
        self.base_seed + trial as u64
    }

    pub fn run_budget(&self, trial: usize) -> crate::error::Result<RunBudget> {
        RunBudget::new(self.budget.population, self.budget.iterations, self.seed_for(trial))
    }
}
