use crate::error::{OptimError, Result};
use crate::population::Individual;

/// Each member's state at the end of the previous update.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryMatrix {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
}

impl MemoryMatrix {
    pub fn from_members(members: &[Individual]) -> Self {
        Self {
            positions: members.iter().map(|m| m.position.clone()).collect(),
            fitness: members.iter().map(|m| m.fitness).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.fitness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fitness.is_empty()
    }
}

/// Reverts every member whose remembered fitness is strictly better than its
/// current one, then stores the resulting state as the new memory.
///
/// Ties keep the current position. Returns how many members were reverted.
pub fn memory_update(members: &mut [Individual], memory: &mut MemoryMatrix) -> Result<usize> {
    if memory.len() != members.len() || memory.positions.len() != members.len() {
        return Err(OptimError::DimensionMismatch { expected: memory.len(), actual: members.len() });
    }
    let mut reverted = 0;
    for (i, m) in members.iter_mut().enumerate() {
        if memory.positions[i].len() != m.position.len() {
            return Err(OptimError::DimensionMismatch { expected: memory.positions[i].len(), actual: m.position.len() });
        }
        if !m.is_evaluated() {
            return Err(OptimError::Unevaluated(i));
        }
        if memory.fitness[i] < m.fitness {
            m.position.clone_from(&memory.positions[i]);
            m.fitness = memory.fitness[i];
            reverted += 1;
        } else {
            memory.positions[i].clone_from(&m.position);
            memory.fitness[i] = m.fitness;
        }
    }
    Ok(reverted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(prev: f64, now: f64) -> Individual {
        let mut memory = MemoryMatrix { positions: vec![vec![-1.0]], fitness: vec![prev] };
        let mut members = vec![Individual::new(vec![1.0], now)];
        memory_update(&mut members, &mut memory).unwrap();
        assert_eq!(memory.positions[0], members[0].position);
        assert_eq!(memory.fitness[0], members[0].fitness);
        members.pop().unwrap()
    }

    #[test]
    fn better_memory_reverts() {
        assert_eq!(one(1.0, 2.0), Individual::new(vec![-1.0], 1.0));
    }

    #[test]
    fn better_current_kept() {
        assert_eq!(one(2.0, 1.0), Individual::new(vec![1.0], 1.0));
    }

    #[test]
    fn tie_keeps_current() {
        assert_eq!(one(1.5, 1.5), Individual::new(vec![1.0], 1.5));
    }

    #[test]
    fn shape_mismatch() {
        let mut memory = MemoryMatrix { positions: vec![vec![0.0]], fitness: vec![0.0] };
        let mut members = vec![Individual::new(vec![1.0], 1.0), Individual::new(vec![1.0], 1.0)];
        assert!(memory_update(&mut members, &mut memory).is_err());
        let mut wide = vec![Individual::new(vec![1.0, 2.0], 1.0)];
        assert!(memory_update(&mut wide, &mut memory).is_err());
    }
}
