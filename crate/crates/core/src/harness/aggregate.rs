use std::collections::BTreeMap;

use serde::Serialize;

use super::{Classification, RunResult};
use crate::error::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub optimal: usize,
    pub suboptimal: usize,
    pub trivial: usize,
}

impl OutcomeCounts {
    pub fn get(&self, c: Classification) -> usize {
        match c {
            Classification::Optimal => self.optimal,
            Classification::Suboptimal => self.suboptimal,
            Classification::Trivial => self.trivial,
        }
    }

    pub fn total(&self) -> usize {
        self.optimal + self.suboptimal + self.trivial
    }

    fn bump(&mut self, c: Classification) {
        match c {
            Classification::Optimal => self.optimal += 1,
            Classification::Suboptimal => self.suboptimal += 1,
            Classification::Trivial => self.trivial += 1,
        }
    }
}

/// Outcome counts keyed by `(city, N)`.
pub type ClassifiedCounts = BTreeMap<(String, usize), OutcomeCounts>;

pub fn aggregate_counts(results: &[RunResult]) -> ClassifiedCounts {
    let mut counts = ClassifiedCounts::new();
    for r in results {
        counts
            .entry((r.city.clone(), r.n))
            .or_default()
            .bump(r.classification);
    }
    counts
}

/// Parses a results file (JSON array of run records).
pub fn load_results(text: &str) -> Result<Vec<RunResult>> {
    Ok(serde_json::from_str(text)?)
}
