use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};

/// A candidate solution. `fitness` is NaN until the position is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub position: Vec<f64>,
    pub fitness: f64,
}

impl Individual {
    pub fn new(position: Vec<f64>, fitness: f64) -> Self {
        Self { position, fitness }
    }

    pub fn unevaluated(position: Vec<f64>) -> Self {
        Self { position, fitness: f64::NAN }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.fitness.is_nan()
    }
}

/// The α/β/δ hierarchy. α doubles as the run's elite (best-so-far).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaders {
    pub alpha: Individual,
    pub beta: Individual,
    pub delta: Individual,
}

impl Leaders {
    /// Places `candidate` at the top of the hierarchy, demoting α to β and β to δ.
    pub fn promote(&mut self, candidate: Individual) {
        let old_alpha = std::mem::replace(&mut self.alpha, candidate);
        let old_beta = std::mem::replace(&mut self.beta, old_alpha);
        self.delta = old_beta;
    }
}

/// Members plus their current leaders.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub leaders: Leaders,
}

/// Smallest population that has three leaders and at least one follower.
pub const MIN_POPULATION: usize = 4;

impl Population {
    /// Builds a population from evaluated members, electing leaders from scratch.
    pub fn new(members: Vec<Individual>) -> Result<Self> {
        if members.len() < MIN_POPULATION {
            return Err(OptimError::PopulationTooSmall { needed: MIN_POPULATION, actual: members.len() });
        }
        let leaders = update_leaders(&members, None)?;
        Ok(Self { members, leaders })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Re-elects leaders from the current members, keeping α if it is still better.
    pub fn refresh_leaders(&mut self) -> Result<()> {
        self.leaders = update_leaders(&self.members, Some(&self.leaders))?;
        Ok(())
    }
}

/// Elects α, β, δ as the three lowest-fitness member slots (ties go to the
/// lower index). A previous α survives when it is strictly better than every
/// member, in which case the two best members become β and δ.
pub fn update_leaders(members: &[Individual], previous: Option<&Leaders>) -> Result<Leaders> {
    if let Some(i) = members.iter().position(|m| !m.is_evaluated()) {
        return Err(OptimError::Unevaluated(i));
    }
    if members.len() < 3 {
        return Err(OptimError::PopulationTooSmall { needed: 3, actual: members.len() });
    }
    let mut order: Vec<usize> = (0..members.len()).collect();
    // stable sort: equal fitness keeps index order
    order.sort_by(|&a, &b| members[a].fitness.total_cmp(&members[b].fitness));
    let pick = |k: usize| members[order[k]].clone();

    match previous {
        Some(prev) if prev.alpha.fitness < members[order[0]].fitness => {
            Ok(Leaders { alpha: prev.alpha.clone(), beta: pick(0), delta: pick(1) })
        }
        _ => Ok(Leaders { alpha: pick(0), beta: pick(1), delta: pick(2) }),
    }
}
