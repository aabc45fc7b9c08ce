use serde::{Deserialize, Serialize};

use super::{symmetric_eigen, Graph};
use crate::error::{Error, Result};

/// Eigenvalues with magnitude below this are treated as exact zeros.
const ZERO_EIGENVALUE: f64 = 1e-9;

/// Structural summary of one graph instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub m: usize,
    pub degree_variance: f64,
    pub fiedler: f64,
}

impl GraphMetrics {
    pub fn of(g: &Graph) -> Result<Self> {
        Ok(Self {
            n: g.node_count(),
            m: g.edge_count(),
            degree_variance: degree_variance(g)?,
            fiedler: algebraic_connectivity(g),
        })
    }
}

/// Population variance of the degree sequence.
pub fn degree_variance(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let degrees: Vec<f64> = g.nodes().iter().map(|&u| g.degree(u) as f64).collect();
    let mean = degrees.iter().sum::<f64>() / n as f64;
    Ok(degrees.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n as f64)
}

/// Row-major combinatorial Laplacian `D - A`, indexed by the graph's node list.
pub fn laplacian(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let pos = g.natural_order().positions();
    let mut l = vec![0.0; n * n];
    for (i, &u) in g.nodes().iter().enumerate() {
        l[i * n + i] = g.degree(u) as f64;
        for v in g.neighbors(u) {
            l[i * n + pos[&v]] = -1.0;
        }
    }
    l
}

/// Second-smallest Laplacian eigenvalue, surfacing solver failures.
pub fn algebraic_connectivity_checked(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "algebraic connectivity needs at least 2 nodes, got {n}"
        )));
    }
    let eig = symmetric_eigen(&laplacian(g), n)?;
    let lambda = eig.values[1];
    Ok(if lambda.abs() < ZERO_EIGENVALUE { 0.0 } else { lambda })
}

/// Second-smallest Laplacian eigenvalue (Fiedler value).
///
/// Any failure, including fewer than two nodes, yields 0.0 and a warning log
/// record.
pub fn algebraic_connectivity(g: &Graph) -> f64 {
    algebraic_connectivity_checked(g).unwrap_or_else(|e| {
        log::warn!("algebraic connectivity fell back to 0.0: {e}");
        0.0
    })
}
