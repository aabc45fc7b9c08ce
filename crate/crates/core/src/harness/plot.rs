use std::str::FromStr;

use super::{aggregate_counts, Classification, RunResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Outcome counts per (city, N) and classification.
    OutcomeBars,
    /// Approximation ratio against the Fiedler value, one row per run.
    ConnectivityScatter,
    /// Approximation ratio against degree variance, one row per run.
    VarianceScatter,
}

impl PlotKind {
    pub const ALL: [PlotKind; 3] = [
        Self::OutcomeBars,
        Self::ConnectivityScatter,
        Self::VarianceScatter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::OutcomeBars => "outcome_bars",
            Self::ConnectivityScatter => "connectivity_scatter",
            Self::VarianceScatter => "variance_scatter",
        }
    }

    pub fn header(self) -> &'static [&'static str] {
        match self {
            Self::OutcomeBars => &["city", "N", "classification", "count"],
            Self::ConnectivityScatter => &[
                "city",
                "N",
                "fiedler",
                "approximation_ratio",
                "classification",
                "true_opt",
            ],
            Self::VarianceScatter => &[
                "city",
                "N",
                "degree_variance",
                "approximation_ratio",
                "classification",
                "true_opt",
            ],
        }
    }

    /// Identifies a CSV produced by [`emit_plot_data`] from its header row.
    pub fn from_header(header: &[&str]) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.header() == header)
    }
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownPlotKind(s.to_string()))
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

/// Figure data as CSV text with a fixed header per kind.
pub fn emit_plot_data(results: &[RunResult], kind: PlotKind) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(kind.header()).map_err(csv_err)?;
    match kind {
        PlotKind::OutcomeBars => {
            for ((city, n), counts) in aggregate_counts(results) {
                for c in Classification::ALL {
                    w.write_record([
                        city.clone(),
                        n.to_string(),
                        c.to_string(),
                        counts.get(c).to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        PlotKind::ConnectivityScatter | PlotKind::VarianceScatter => {
            for r in results {
                let x = if kind == PlotKind::ConnectivityScatter {
                    r.topology.fiedler
                } else {
                    r.topology.degree_variance
                };
                w.write_record([
                    r.city.clone(),
                    r.n.to_string(),
                    x.to_string(),
                    r.approximation_ratio.to_string(),
                    r.classification.to_string(),
                    r.true_opt.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::harness::{run_instance, RunSettings};

    fn runs(k: usize) -> Vec<RunResult> {
        let g = Graph::new(vec![0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let settings = RunSettings {
            record_durations: false,
            ..Default::default()
        };
        (0..k as u64)
            .map(|s| run_instance("star, west", &g, &g.natural_order(), settings, s).unwrap())
            .collect()
    }

    #[test]
    fn kinds_parse() {
        for k in PlotKind::ALL {
            assert_eq!(k.as_str().parse::<PlotKind>().unwrap(), k);
        }
        assert!(matches!(
            "histogram".parse::<PlotKind>(),
            Err(Error::UnknownPlotKind(_))
        ));
    }

    #[test]
    fn empty_results_give_header_only() {
        for k in PlotKind::ALL {
            let csv = emit_plot_data(&[], k).unwrap();
            assert_eq!(csv, format!("{}\n", k.header().join(",")));
        }
    }

    #[test]
    fn outcome_bars_for_ten_runs() {
        let csv = emit_plot_data(&runs(10), PlotKind::OutcomeBars).unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 3);
        let total: usize = rows.iter().map(|r| r[3].parse::<usize>().unwrap()).sum();
        assert_eq!(total, 10);
        assert_eq!(&rows[0][0], "star, west");
    }

    #[test]
    fn variance_scatter_rows() {
        let results = runs(4);
        let csv = emit_plot_data(&results, PlotKind::VarianceScatter).unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0][2].parse::<f64>().unwrap(), 0.75);
        assert_eq!(rows[0][5].parse::<usize>().unwrap(), 1);
    }
}
