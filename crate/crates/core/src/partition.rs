use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Value};

/// An assignment of each item (by index) to one of `parts` parts.
/// Parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionAssignment {
    part_of: Vec<usize>,
    parts: usize,
}

impl PartitionAssignment {
    pub fn new(part_of: Vec<usize>, parts: usize) -> Result<Self> {
        if parts == 0 {
            return Err(Error::InvalidAllocation("a partition needs at least one part".into()));
        }
        if let Some(&bad) = part_of.iter().find(|&&p| p >= parts) {
            return Err(Error::InvalidAllocation(format!(
                "part index {bad} out of range 0..{parts}"
            )));
        }
        Ok(PartitionAssignment { part_of, parts })
    }

    pub fn part_of(&self) -> &[usize] {
        &self.part_of
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    /// Sum of item values in each part.
    pub fn part_sums(&self, instance: &Instance) -> Result<Vec<Value>> {
        if instance.len() != self.part_of.len() {
            return Err(Error::DimensionMismatch(format!(
                "assignment covers {} items, instance has {}",
                self.part_of.len(),
                instance.len()
            )));
        }
        let mut sums = vec![0u64; self.parts];
        for (v, &p) in instance.values().zip(&self.part_of) {
            sums[p] += v;
        }
        Ok(sums.into_iter().map(Value).collect())
    }

    /// Item indices of each part.
    pub fn bundles(&self) -> Vec<Vec<usize>> {
        let mut bundles = vec![Vec::new(); self.parts];
        for (item, &p) in self.part_of.iter().enumerate() {
            bundles[p].push(item);
        }
        bundles
    }
}
