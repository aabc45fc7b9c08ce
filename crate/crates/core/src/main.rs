use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qaoa_topobench::encoding::{build_mvc_qubo, qubo_to_ising, QuboParams};
use qaoa_topobench::error::Result;
use qaoa_topobench::graph::{read_graph_file, GraphFile, GraphMetrics};
use qaoa_topobench::harness::{
    emit_figure, emit_plot_data, fixtures, load_results, run_experiment, run_instance,
    write_results, BenchConfig, PlotKind, RunSettings,
};
use qaoa_topobench::optimizer::NelderMeadConfig;
use qaoa_topobench::oracle::solve_classical_mvc;

#[derive(Parser)]
#[command(name = "qaoa-topobench", version, about = "QAOA minimum vertex cover benchmarks on street-network graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print node/edge counts, degree variance and algebraic connectivity.
    Metrics { graph: PathBuf },
    /// Exact minimum vertex cover by enumeration.
    SolveClassical { graph: PathBuf },
    /// One optimized QAOA run on a whole graph (at most 20 nodes).
    QaoaRun {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 200)]
        maxiter: usize,
        #[arg(long, default_value_t = 1e-6)]
        opt_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2.0)]
        penalty_a: f64,
        #[arg(long, default_value_t = 1.0)]
        cost_b: f64,
        /// Also write the QUBO and Ising coefficients to this JSON file.
        #[arg(long)]
        dump_hamiltonian: Option<PathBuf>,
    },
    /// Full experiment from a JSON config. Graph paths resolve against the config's directory.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "results.json")]
        out: PathBuf,
    },
    /// Turn a results file into plot-ready CSV.
    Plot {
        #[arg(long)]
        results: PathBuf,
        /// outcome_bars, connectivity_scatter or variance_scatter
        #[arg(long)]
        kind: PlotKind,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render plot CSVs as SVG, one `<stem>.svg` per input.
    Figures {
        #[arg(long, required = true, num_args = 1..)]
        csv: Vec<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Write the synthetic planned and organic city graphs.
    GenFixtures {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Serialize)]
struct HamiltonianDump<'a> {
    qubo: &'a qaoa_topobench::encoding::QuboProblem,
    ising: &'a qaoa_topobench::encoding::IsingHamiltonian,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Metrics { graph } => print_json(&GraphMetrics::of(&read_graph_file(&graph)?)?),
        Command::SolveClassical { graph } => print_json(&solve_classical_mvc(&read_graph_file(&graph)?)?),
        Command::QaoaRun {
            graph,
            p,
            maxiter,
            opt_tol,
            seed,
            penalty_a,
            cost_b,
            dump_hamiltonian,
        } => {
            let g = read_graph_file(&graph)?;
            let order = g.natural_order();
            let qubo_params = QuboParams {
                penalty_a,
                cost_b,
            };
            if let Some(path) = dump_hamiltonian {
                let qubo = build_mvc_qubo(&g, &order, qubo_params)?;
                let ising = qubo_to_ising(&qubo)?;
                write_json(&path, &HamiltonianDump { qubo: &qubo, ising: &ising })?;
            }
            let settings = RunSettings {
                p,
                qubo: qubo_params,
                optimizer: NelderMeadConfig {
                    max_iterations: maxiter,
                    convergence_tolerance: opt_tol,
                    seed,
                    ..Default::default()
                },
                ..Default::default()
            };
            let label = graph
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            print_json(&run_instance(&label, &g, &order, settings, seed)?)
        }
        Command::Bench { config, out } => {
            let bench = BenchConfig::load(&config)?;
            let base = config.parent().unwrap_or(Path::new("."));
            let graphs = bench.load_graphs(base)?;
            let results = run_experiment(&graphs, &bench.experiment)?;
            write_results(&out, &results)?;
            log::info!("wrote {} runs to {}", results.len(), out.display());
            Ok(())
        }
        Command::Plot { results, kind, out } => {
            let results = load_results(&std::fs::read_to_string(results)?)?;
            let csv = emit_plot_data(&results, kind)?;
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Figures { csv, out_dir } => {
            std::fs::create_dir_all(&out_dir)?;
            for path in csv {
                let svg = emit_figure(&std::fs::read_to_string(&path)?)?;
                let stem = path.file_stem().unwrap_or(path.as_os_str());
                let target = out_dir.join(stem).with_extension("svg");
                std::fs::write(&target, svg)?;
                log::info!("wrote {}", target.display());
            }
            Ok(())
        }
        Command::GenFixtures { out_dir } => {
            std::fs::create_dir_all(&out_dir)?;
            let planned = fixtures::planned_city();
            let organic = fixtures::organic_city();
            write_json(&out_dir.join("planned.json"), &GraphFile::from_graph(&planned, Some("planned")))?;
            write_json(&out_dir.join("organic.json"), &GraphFile::from_graph(&organic, Some("organic")))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QAOA_TOPOBENCH_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
