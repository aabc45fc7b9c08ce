use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{approximation_ratio, classify, selected_nodes, Classification};
use crate::encoding::{build_mvc_qubo, qubo_to_ising, Bitstring, QuboParams, QuboProblem};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMetrics, NodeId, NodeOrder};
use crate::optimizer::{minimize, random_init, NelderMeadConfig};
use crate::oracle::solve_classical_mvc;
use crate::qaoa::{
    build_diagonal, expectation, min_energy_bitstring, most_probable_bitstring, probabilities,
    qaoa_state_with_diagonal, DiagonalCost, QaoaParams,
};
use crate::rng::SplitMix64;

/// Settings shared by every run of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub p: usize,
    pub qubo: QuboParams,
    pub optimizer: NelderMeadConfig,
    pub support_epsilon: f64,
    /// When false, `duration` is written as 0 so result files are
    /// byte-reproducible.
    pub record_durations: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            p: 1,
            qubo: QuboParams::default(),
            optimizer: NelderMeadConfig::default(),
            support_epsilon: 0.0,
            record_durations: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MostProbable {
    pub bitstring: Bitstring,
    pub probability: f64,
    /// Number of selected vertices, before any repair.
    pub cover_size: usize,
    pub repaired_size: usize,
    pub valid_cover: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinEnergy {
    pub bitstring: Bitstring,
    pub cover_size: usize,
    pub qubo_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSummary {
    pub method: String,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// One QAOA run. Field names are the results file format (see docs/FORMATS.md).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub city: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub instance: usize,
    pub node_order: Vec<NodeId>,
    pub topology: GraphMetrics,
    pub true_opt: usize,
    pub most_probable: MostProbable,
    pub min_energy: MinEnergy,
    pub hamiltonian_expectation: f64,
    pub duration: f64,
    pub seed: u64,
    pub classification: Classification,
    pub approximation_ratio: f64,
    pub valid_cover: bool,
    pub optimizer: OptimizerSummary,
}

/// Everything about an instance that does not depend on the run seed.
#[derive(Debug, Clone)]
pub struct PreparedInstance {
    pub graph: Graph,
    pub order: NodeOrder,
    pub metrics: GraphMetrics,
    pub true_opt: usize,
    pub qubo: QuboProblem,
    pub offset: f64,
    pub diagonal: DiagonalCost,
    pub settings: RunSettings,
}

impl PreparedInstance {
    pub fn new(graph: &Graph, order: &NodeOrder, settings: RunSettings) -> Result<Self> {
        if settings.p < 1 {
            return Err(Error::InvalidArgument("depth p must be at least 1".into()));
        }
        if settings.support_epsilon.is_nan() || settings.support_epsilon < 0.0 {
            return Err(Error::InvalidArgument("support_epsilon must be non-negative".into()));
        }
        settings.optimizer.validate()?;
        if graph.edge_count() == 0 {
            return Err(Error::UndefinedRatio);
        }
        let qubo = build_mvc_qubo(graph, order, settings.qubo)?;
        let ham = qubo_to_ising(&qubo)?;
        let diagonal = build_diagonal(&ham)?;
        Ok(Self {
            graph: graph.clone(),
            order: order.clone(),
            metrics: GraphMetrics::of(graph)?,
            true_opt: solve_classical_mvc(graph)?.size,
            qubo,
            offset: ham.offset,
            diagonal,
            settings,
        })
    }

    /// Offset-inclusive QAOA expectation for flat `[gammas.., betas..]`.
    pub fn objective(&self, theta: &[f64]) -> Result<f64> {
        let params = QaoaParams::from_flat(theta)?;
        let sv = qaoa_state_with_diagonal(&self.diagonal, &params)?;
        expectation(&sv, &self.diagonal, self.offset)
    }

    pub fn run(&self, city: &str, run_seed: u64) -> Result<RunResult> {
        let started = Instant::now();
        let s = &self.settings;

        let mut rng = SplitMix64::new(run_seed);
        let init = random_init(2 * s.p, &mut rng)?;
        let mut failure = None;
        let opt = minimize(
            |theta| {
                self.objective(theta).unwrap_or_else(|e| {
                    failure.get_or_insert(e);
                    f64::NAN
                })
            },
            &init,
            &s.optimizer,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let opt = opt?;

        let params = QaoaParams::from_flat(&opt.best_params)?;
        let sv = qaoa_state_with_diagonal(&self.diagonal, &params)?;
        let hamiltonian_expectation = expectation(&sv, &self.diagonal, self.offset)?;
        let probs = probabilities(&sv);

        let top = most_probable_bitstring(&probs)?;
        let probability = probs.get(&top).unwrap_or(0.0);
        let classification = classify(&top, &self.graph, &self.order, self.true_opt)?;
        let ratio = approximation_ratio(&top, &self.graph, &self.order, self.true_opt)?;

        let (low, qubo_energy) = min_energy_bitstring(&probs, &self.qubo, s.support_epsilon)?;
        let low_size = selected_nodes(&low, &self.order)?.len();

        let duration = if s.record_durations {
            started.elapsed().as_secs_f64()
        } else {
            0.0
        };

        Ok(RunResult {
            city: city.to_string(),
            n: self.graph.node_count(),
            instance: 0,
            node_order: self.order.ids().to_vec(),
            topology: self.metrics,
            true_opt: self.true_opt,
            most_probable: MostProbable {
                cover_size: top.count_ones(),
                bitstring: top,
                probability,
                repaired_size: ratio.repaired_size,
                valid_cover: ratio.valid_cover,
            },
            min_energy: MinEnergy {
                bitstring: low,
                cover_size: low_size,
                qubo_energy,
            },
            hamiltonian_expectation,
            duration,
            seed: run_seed,
            classification,
            approximation_ratio: ratio.ratio,
            valid_cover: ratio.valid_cover,
            optimizer: OptimizerSummary {
                method: "nelder-mead".into(),
                gamma: params.gamma,
                beta: params.beta,
                best_value: opt.best_value,
                evaluations: opt.evaluations,
                converged: opt.converged,
            },
        })
    }
}

/// Builds, optimizes and evaluates one seeded QAOA run on `g`.
pub fn run_instance(
    city: &str,
    g: &Graph,
    order: &NodeOrder,
    settings: RunSettings,
    run_seed: u64,
) -> Result<RunResult> {
    PreparedInstance::new(g, order, settings)?.run(city, run_seed)
}
