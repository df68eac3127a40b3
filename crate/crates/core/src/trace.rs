use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};
use crate::population::{Individual, MIN_POPULATION};

/// Population size, iteration count and seed for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunBudget {
    pub population: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl RunBudget {
    pub fn new(population: usize, iterations: usize, seed: u64) -> Result<Self> {
        let b = Self { population, iterations, seed };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < MIN_POPULATION {
            return Err(OptimError::InvalidBudget(format!(
                "population {} is below the minimum of {MIN_POPULATION}",
                self.population
            )));
        }
        if self.iterations < 3 {
            return Err(OptimError::InvalidBudget(format!("iterations {} is below the minimum of 3", self.iterations)));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub evaluations: u64,
    pub best_fitness: f64,
}

/// Per-iteration best-so-far history of a run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunTrace {
    pub records: Vec<TraceRecord>,
    pub best_position: Vec<f64>,
}

impl RunTrace {
    pub fn with_capacity(n: usize) -> Self {
        Self { records: Vec::with_capacity(n), best_position: Vec::new() }
    }

    /// Appends a record, folding `best` into the running minimum.
    pub fn record(&mut self, iteration: usize, evaluations: u64, best: f64) {
        let best_fitness = match self.records.last() {
            Some(prev) if prev.best_fitness <= best => prev.best_fitness,
            _ => best,
        };
        self.records.push(TraceRecord { iteration, evaluations, best_fitness });
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn final_best(&self) -> Option<f64> {
        self.records.last().map(|r| r.best_fitness)
    }

    pub fn is_monotone(&self) -> bool {
        self.records.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness && w[1].evaluations > w[0].evaluations)
    }

    /// `iteration,evals,best_fitness` CSV with a header row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["iteration", "evals", "best_fitness"]).expect("in-memory write");
        for r in &self.records {
            w.write_record([r.iteration.to_string(), r.evaluations.to_string(), r.best_fitness.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Individual,
    pub trace: RunTrace,
}
