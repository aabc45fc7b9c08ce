//! End-to-end experiment orchestration: per-run QAOA records, outcome
//! classification, aggregation and figure data.

mod aggregate;
mod experiment;
pub mod fixtures;
mod plot;
mod run;
mod svg;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::encoding::Bitstring;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodeOrder};
use crate::oracle::is_vertex_cover;

pub use aggregate::{aggregate_counts, load_results, ClassifiedCounts, OutcomeCounts};
pub use experiment::{
    run_experiment, write_results, BenchConfig, CitySource, ExperimentConfig, LabeledGraph,
};
pub use plot::{emit_plot_data, PlotKind};
pub use run::{
    run_instance, MinEnergy, MostProbable, OptimizerSummary, PreparedInstance, RunResult,
    RunSettings,
};
pub use svg::emit_figure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Optimal,
    Suboptimal,
    Trivial,
}

impl Classification {
    pub const ALL: [Classification; 3] = [Self::Optimal, Self::Suboptimal, Self::Trivial];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Optimal => "optimal",
            Self::Suboptimal => "suboptimal",
            Self::Trivial => "trivial",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown classification `{s}`")))
    }
}

/// Nodes whose bit is set, mapped through `order`.
pub fn selected_nodes(x: &Bitstring, order: &NodeOrder) -> Result<BTreeSet<NodeId>> {
    if x.len() != order.len() {
        return Err(Error::Dimension {
            expected: order.len(),
            actual: x.len(),
        });
    }
    Ok(x.bits()
        .iter()
        .zip(order.ids())
        .filter(|(&b, _)| b)
        .map(|(_, &u)| u)
        .collect())
}

/// Optimal: valid cover of size `true_opt`. Trivial: not a cover, or every
/// vertex selected. Suboptimal: any other valid cover.
pub fn classify(x: &Bitstring, g: &Graph, order: &NodeOrder, true_opt: usize) -> Result<Classification> {
    let s = selected_nodes(x, order)?;
    if !is_vertex_cover(g, &s)? || s.len() == g.node_count() {
        return Ok(Classification::Trivial);
    }
    Ok(if s.len() == true_opt {
        Classification::Optimal
    } else {
        Classification::Suboptimal
    })
}

/// Greedy completion of a partial cover.
///
/// While some edge is uncovered, takes the uncovered edge with the
/// lexicographically smallest `(min, max)` endpoint pair and adds its
/// higher-degree endpoint, the lower id on ties.
pub fn repair_cover(g: &Graph, selected: &BTreeSet<NodeId>) -> BTreeSet<NodeId> {
    let mut cover = selected.clone();
    while let Some((u, v)) = g
        .edges()
        .find(|(u, v)| !cover.contains(u) && !cover.contains(v))
    {
        let pick = if g.degree(v) > g.degree(u) { v } else { u };
        cover.insert(pick);
    }
    cover
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioOutcome {
    pub ratio: f64,
    pub valid_cover: bool,
    /// Size after greedy repair (equal to the raw size for valid covers).
    pub repaired_size: usize,
}

/// Cover size of `x`, repaired if needed, divided by `true_opt`.
pub fn approximation_ratio(
    x: &Bitstring,
    g: &Graph,
    order: &NodeOrder,
    true_opt: usize,
) -> Result<RatioOutcome> {
    if true_opt == 0 {
        return Err(Error::UndefinedRatio);
    }
    let s = selected_nodes(x, order)?;
    let valid_cover = is_vertex_cover(g, &s)?;
    let repaired_size = if valid_cover {
        s.len()
    } else {
        repair_cover(g, &s).len()
    };
    Ok(RatioOutcome {
        ratio: repaired_size as f64 / true_opt as f64,
        valid_cover,
        repaired_size,
    })
}
