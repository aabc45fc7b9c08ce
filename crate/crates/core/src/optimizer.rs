//! Derivative-free local minimization (Nelder-Mead) of the QAOA objective.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

const REFLECTION: f64 = 1.0;
const EXPANSION: f64 = 2.0;
const CONTRACTION: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NelderMeadConfig {
    /// Objective evaluations allowed after the initial simplex.
    pub max_iterations: usize,
    /// Offset applied along each axis to build the initial simplex (radians).
    pub initial_simplex_scale: f64,
    /// Stop once the simplex objective spread drops below this.
    pub convergence_tolerance: f64,
    pub seed: u64,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            initial_simplex_scale: 0.5,
            convergence_tolerance: 1e-6,
            seed: 0,
        }
    }
}

impl NelderMeadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        if !(self.initial_simplex_scale.is_finite() && self.initial_simplex_scale > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "initial_simplex_scale must be positive, got {}",
                self.initial_simplex_scale
            )));
        }
        if !(self.convergence_tolerance.is_finite() && self.convergence_tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "convergence_tolerance must be positive, got {}",
                self.convergence_tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// `dim` starting angles drawn uniformly from `[-pi, pi)`.
pub fn random_init(dim: usize, rng: &mut SplitMix64) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("parameter dimension must be at least 1".into()));
    }
    Ok(rng.angles(dim))
}

/// Counts evaluations, remembers the best point and enforces the budget.
struct Evaluator<F> {
    objective: F,
    evaluations: usize,
    limit: usize,
    best: Option<(Vec<f64>, f64)>,
}

impl<F: FnMut(&[f64]) -> f64> Evaluator<F> {
    /// `Ok(None)` once the budget is spent.
    fn eval(&mut self, x: &[f64]) -> Result<Option<f64>> {
        if self.evaluations >= self.limit {
            return Ok(None);
        }
        self.evaluations += 1;
        let value = (self.objective)(x);
        if !value.is_finite() {
            return Err(Error::NonFinite {
                value,
                params: x.to_vec(),
            });
        }
        if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
            self.best = Some((x.to_vec(), value));
        }
        Ok(Some(value))
    }
}

fn affine(from: &[f64], towards: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(towards).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimizes `objective` from `init` with the standard Nelder-Mead moves.
///
/// The initial simplex is `init` plus one vertex per axis offset by
/// `initial_simplex_scale`. Those `dim + 1` evaluations are not charged to
/// `max_iterations`. Returns the best point seen.
pub fn minimize<F>(objective: F, init: &[f64], config: &NelderMeadConfig) -> Result<OptimizationResult>
where
    F: FnMut(&[f64]) -> f64,
{
    config.validate()?;
    let dim = init.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("parameter dimension must be at least 1".into()));
    }

    let mut ev = Evaluator {
        objective,
        evaluations: 0,
        limit: dim + 1 + config.max_iterations,
        best: None,
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut x = init.to_vec();
        if k > 0 {
            x[k - 1] += config.initial_simplex_scale;
        }
        let f = ev.eval(&x)?.expect("initial simplex is within budget");
        simplex.push((x, f));
    }

    let spread = |s: &[(Vec<f64>, f64)]| s[s.len() - 1].1 - s[0].1;
    let mut converged = false;

    'outer: loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if spread(&simplex) < config.convergence_tolerance {
            converged = true;
            break;
        }

        let f_best = simplex[0].1;
        let f_second_worst = simplex[dim - 1].1;
        let (worst, f_worst) = simplex[dim].clone();
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }

        let reflected = affine(&centroid, &worst, -REFLECTION);
        let Some(f_r) = ev.eval(&reflected)? else { break };

        if f_r < f_best {
            let expanded = affine(&centroid, &reflected, EXPANSION);
            let Some(f_e) = ev.eval(&expanded)? else {
                simplex[dim] = (reflected, f_r);
                break;
            };
            simplex[dim] = if f_e < f_r {
                (expanded, f_e)
            } else {
                (reflected, f_r)
            };
            continue;
        }
        if f_r < f_second_worst {
            simplex[dim] = (reflected, f_r);
            continue;
        }

        let outside = f_r < f_worst;
        let target = if outside { &reflected } else { &worst };
        let contracted = affine(&centroid, target, CONTRACTION);
        let Some(f_c) = ev.eval(&contracted)? else { break };
        let accept = if outside { f_c <= f_r } else { f_c < f_worst };
        if accept {
            simplex[dim] = (contracted, f_c);
            continue;
        }

        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = affine(&best, &vertex.0, SHRINK);
            let Some(f) = ev.eval(&x)? else { break 'outer };
            *vertex = (x, f);
        }
    }

    if !converged {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        converged = spread(&simplex) < config.convergence_tolerance;
    }
    let (best_params, best_value) = ev.best.expect("at least one evaluation");
    Ok(OptimizationResult {
        best_params,
        best_value,
        evaluations: ev.evaluations,
        converged,
    })
}
