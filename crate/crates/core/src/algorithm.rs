//! Name-indexed registry over every optimizer in the crate.

use serde::{Deserialize, Serialize};

use crate::baselines::{run_de, run_gwo, run_mpa, run_pso, DeConfig, GwoConfig, MpaConfig, PsoConfig};
use crate::error::{OptimError, Result};
use crate::gmpa::{run_gmpa, GmpaConfig};
use crate::problem::ObjectiveProblem;
use crate::trace::{RunBudget, RunResult};

/// An optimizer together with its configuration.
///
/// Serialized as `{"name": "gmpa", "config": {...}}`; `config` may be omitted
/// to take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "config", rename_all = "lowercase", try_from = "RawAlgorithm")]
pub enum Algorithm {
    Gmpa(GmpaConfig),
    Gwo(GwoConfig),
    Mpa(MpaConfig),
    Pso(PsoConfig),
    De(DeConfig),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgorithm {
    name: String,
    #[serde(default)]
    config: Option<serde_json::Value>,
}

impl TryFrom<RawAlgorithm> for Algorithm {
    type Error = String;

    fn try_from(raw: RawAlgorithm) -> std::result::Result<Self, String> {
        fn parse<T: serde::de::DeserializeOwned + Default>(v: Option<serde_json::Value>) -> std::result::Result<T, String> {
            match v {
                None | Some(serde_json::Value::Null) => Ok(T::default()),
                Some(v) => serde_json::from_value(v).map_err(|e| e.to_string()),
            }
        }
        Ok(match raw.name.as_str() {
            "gmpa" => Algorithm::Gmpa(parse(raw.config)?),
            "gwo" => Algorithm::Gwo(parse(raw.config)?),
            "mpa" => Algorithm::Mpa(parse(raw.config)?),
            "pso" => Algorithm::Pso(parse(raw.config)?),
            "de" => Algorithm::De(parse(raw.config)?),
            other => return Err(format!("unknown algorithm `{other}`; expected one of {}", Algorithm::NAMES.join(", "))),
        })
    }
}

impl Algorithm {
    pub const NAMES: [&'static str; 5] = ["gmpa", "gwo", "mpa", "pso", "de"];

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "gmpa" => Algorithm::Gmpa(GmpaConfig::default()),
            "gwo" => Algorithm::Gwo(GwoConfig::default()),
            "mpa" => Algorithm::Mpa(MpaConfig::default()),
            "pso" => Algorithm::Pso(PsoConfig::default()),
            "de" => Algorithm::De(DeConfig::default()),
            other => {
                return Err(OptimError::InvalidParameter { name: "algorithm", reason: format!("unknown algorithm `{other}`") })
            }
        })
    }

    pub fn all_defaults() -> Vec<Self> {
        Self::NAMES.iter().map(|n| Self::by_name(n).expect("registered")).collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Gmpa(_) => "gmpa",
            Algorithm::Gwo(_) => "gwo",
            Algorithm::Mpa(_) => "mpa",
            Algorithm::Pso(_) => "pso",
            Algorithm::De(_) => "de",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algorithm::Gmpa(c) => c.validate(),
            Algorithm::Gwo(_) => Ok(()),
            Algorithm::Mpa(c) => c.validate(),
            Algorithm::Pso(c) => c.validate(),
            Algorithm::De(c) => c.validate(),
        }
    }

    pub fn run(&self, problem: &dyn ObjectiveProblem, budget: &RunBudget) -> Result<RunResult> {
        match self {
            Algorithm::Gmpa(c) => run_gmpa(problem, budget, c),
            Algorithm::Gwo(c) => run_gwo(problem, budget, c),
            Algorithm::Mpa(c) => run_mpa(problem, budget, c),
            Algorithm::Pso(c) => run_pso(problem, budget, c),
            Algorithm::De(c) => run_de(problem, budget, c),
        }
    }
}
