use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{PreparedInstance, RunResult, RunSettings};
use crate::encoding::QuboParams;
use crate::error::{Error, Result};
use crate::graph::{bfs_subgraph, read_graph_file, BfsSample, Graph};
use crate::optimizer::NelderMeadConfig;
use crate::rng::{derive_seed, SplitMix64};

/// Instance index reserved for the start-node sampling stream.
const START_NODE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub label: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub runs_per_instance: usize,
    pub p: usize,
    pub qubo: QuboParams,
    pub optimizer: NelderMeadConfig,
    pub master_seed: u64,
    pub samples_per_city: usize,
    pub support_epsilon: f64,
    pub record_durations: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sizes: vec![8],
            runs_per_instance: 10,
            p: 1,
            qubo: QuboParams::default(),
            optimizer: NelderMeadConfig::default(),
            master_seed: 0,
            samples_per_city: 5,
            support_epsilon: 0.0,
            record_durations: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs_per_instance < 1 {
            return Err(Error::InvalidArgument("runs_per_instance must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.sizes.iter().any(|&n| n < 2) {
            return Err(Error::InvalidArgument(format!(
                "sizes must be non-empty and each at least 2, got {:?}",
                self.sizes
            )));
        }
        if self.samples_per_city < 1 {
            return Err(Error::InvalidArgument("samples_per_city must be at least 1".into()));
        }
        self.qubo.validate()?;
        self.optimizer.validate()
    }

    pub fn run_settings(&self) -> RunSettings {
        RunSettings {
            p: self.p,
            qubo: self.qubo,
            optimizer: self.optimizer,
            support_epsilon: self.support_epsilon,
            record_durations: self.record_durations,
        }
    }
}

/// A city graph named in a bench config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitySource {
    pub label: String,
    /// Graph file, relative to the config file's directory.
    pub graph: PathBuf,
}

/// The `bench` subcommand's config file: city graphs plus experiment settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub cities: Vec<CitySource>,
    #[serde(flatten)]
    pub experiment: ExperimentConfig,
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn load_graphs(&self, base_dir: &Path) -> Result<Vec<LabeledGraph>> {
        self.cities
            .iter()
            .map(|c| {
                Ok(LabeledGraph {
                    label: c.label.clone(),
                    graph: read_graph_file(&base_dir.join(&c.graph))?,
                })
            })
            .collect()
    }
}

struct Instance<'a> {
    city: &'a str,
    index: usize,
    prepared: PreparedInstance,
}

fn sample_instances<'a>(
    city: &'a LabeledGraph,
    config: &ExperimentConfig,
) -> Result<Vec<Instance<'a>>> {
    let nodes = city.graph.nodes();
    if nodes.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = SplitMix64::new(derive_seed(
        config.master_seed,
        &city.label,
        START_NODE_STREAM,
        0,
    ));
    let mut out = Vec::new();
    for sample in 0..config.samples_per_city {
        let start = nodes[rng.below(nodes.len())];
        for &size in &config.sizes {
            match bfs_subgraph(&city.graph, start, size, config.master_seed)? {
                BfsSample::Skip { reachable } => {
                    log::info!(
                        "{}: sample {sample} from node {start} reaches {reachable} < {size} nodes, skipped",
                        city.label
                    );
                }
                BfsSample::Subgraph { graph, order } => {
                    match PreparedInstance::new(&graph, &order, config.run_settings()) {
                        Ok(prepared) => out.push(Instance {
                            city: &city.label,
                            index: out.len(),
                            prepared,
                        }),
                        Err(Error::UndefinedRatio) => {
                            log::info!("{}: sample {sample} has no edges, skipped", city.label);
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Samples BFS subgraphs from every city and runs the seeded QAOA runs.
///
/// Results are ordered by (city as given, instance, run) regardless of how
/// the runs are scheduled.
pub fn run_experiment(graphs: &[LabeledGraph], config: &ExperimentConfig) -> Result<Vec<RunResult>> {
    config.validate()?;
    if graphs.is_empty() {
        return Err(Error::NoInstances("no city graphs given".into()));
    }

    let mut instances = Vec::new();
    for city in graphs {
        instances.extend(sample_instances(city, config)?);
    }
    if instances.is_empty() {
        return Err(Error::NoInstances(format!(
            "no subgraph of sizes {:?} could be sampled",
            config.sizes
        )));
    }
    log::info!(
        "{} instances x {} runs",
        instances.len(),
        config.runs_per_instance
    );

    let jobs: Vec<(&Instance, usize)> = instances
        .iter()
        .flat_map(|inst| (0..config.runs_per_instance).map(move |r| (inst, r)))
        .collect();
    jobs.par_iter()
        .map(|&(inst, run)| {
            let seed = derive_seed(config.master_seed, inst.city, inst.index as u64, run as u64);
            let mut result = inst.prepared.run(inst.city, seed)?;
            result.instance = inst.index;
            Ok(result)
        })
        .collect()
}

/// Writes results as a pretty-printed JSON array with a trailing newline.
pub fn write_results(path: &Path, results: &[RunResult]) -> Result<()> {
    let mut text = serde_json::to_string_pretty(results)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_city() -> LabeledGraph {
        LabeledGraph {
            label: "k2".into(),
            graph: Graph::new(vec![0, 1], [(0, 1)]).unwrap(),
        }
    }

    fn config(sizes: Vec<usize>) -> ExperimentConfig {
        ExperimentConfig {
            sizes,
            samples_per_city: 1,
            record_durations: false,
            ..Default::default()
        }
    }

    #[test]
    fn one_k2_city_gives_ten_records() {
        let results = run_experiment(&[k2_city()], &config(vec![2])).unwrap();
        assert_eq!(results.len(), 10);
        for (i, r) in results.iter().enumerate() {
            assert_eq!(r.city, "k2");
            assert_eq!(r.instance, 0);
            assert_eq!(r.seed, derive_seed(0, "k2", 0, i as u64));
        }
    }

    #[test]
    fn oversized_request_is_an_error() {
        let city = LabeledGraph {
            label: "small".into(),
            graph: Graph::new((0..10).collect(), (1..10).map(|i| (i - 1, i))).unwrap(),
        };
        assert!(matches!(
            run_experiment(&[city], &config(vec![50])),
            Err(Error::NoInstances(_))
        ));
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let city = LabeledGraph {
            label: "grid".into(),
            graph: super::super::fixtures::grid(3, 3),
        };
        let mut c = config(vec![4, 5]);
        c.samples_per_city = 2;
        c.runs_per_instance = 3;
        let a = serde_json::to_string(&run_experiment(std::slice::from_ref(&city), &c).unwrap()).unwrap();
        let b = serde_json::to_string(&run_experiment(&[city], &c).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_validation() {
        assert!(run_experiment(&[], &config(vec![2])).is_err());
        let mut c = config(vec![1]);
        assert!(c.validate().is_err());
        c.sizes = vec![2];
        c.runs_per_instance = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn bench_config_parses_with_defaults() {
        let text = r#"{"cities":[{"label":"a","graph":"a.json"}],"sizes":[8],"master_seed":3}"#;
        let c: BenchConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.cities[0].graph, PathBuf::from("a.json"));
        assert_eq!(c.experiment.master_seed, 3);
        assert_eq!(c.experiment.runs_per_instance, 10);
        assert_eq!(c.experiment.optimizer.max_iterations, 200);
    }
}
