//! Dense statevector simulation of the depth-p QAOA circuit.
//!
//! Basis index `b` encodes bit `x_i = (b >> i) & 1` for qubit `i`, and qubit
//! `i` is variable `i` of the QUBO (node `node_order[i]`). Textual
//! bitstrings put qubit 0 leftmost, see [`Bitstring`].
//!
//! The cost Hamiltonian is diagonal in the computational basis, so the phase
//! layer is applied as an elementwise multiply by `exp(-i gamma E(b))` over a
//! precomputed energy table. The mixer `exp(-i beta X)` acts on each qubit's
//! amplitude pairs independently.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::encoding::{ising_energy, qubo_cost, spins_from_bits, Bitstring, IsingHamiltonian, QuboProblem};
use crate::error::{Error, Result};

/// Largest register the dense simulator accepts (2^20 amplitudes).
pub const MAX_QUBITS: usize = 20;

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::SizeLimit {
            what: "qubits",
            value: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// Wraps raw amplitudes; the length must be `2^n` for some valid `n`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(Self { n, amplitudes })
    }

    /// The computational basis state `|index>`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Multiplies amplitude `b` by `exp(-i gamma E(b))`.
    pub fn apply_phase(&mut self, d: &DiagonalCost, gamma: f64) -> Result<()> {
        check_dim(self.amplitudes.len(), d.energies.len())?;
        for (a, &e) in self.amplitudes.iter_mut().zip(&d.energies) {
            *a *= Complex64::from_polar(1.0, -gamma * e);
        }
        Ok(())
    }

    /// Applies `exp(-i beta X)` to every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (c, s) = (beta.cos(), beta.sin());
        let minus_i_sin = Complex64::new(0.0, -s);
        for q in 0..self.n {
            let stride = 1usize << q;
            for block in self.amplitudes.chunks_exact_mut(stride << 1) {
                let (lo, hi) = block.split_at_mut(stride);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x * c + minus_i_sin * y;
                    *b = minus_i_sin * x + y * c;
                }
            }
        }
    }
}

/// `|+>^n`: every amplitude `2^(-n/2)`.
pub fn uniform_state(n: usize) -> Result<Statevector> {
    check_qubits(n)?;
    let amp = (1.0 / (1u64 << n) as f64).sqrt();
    Ok(Statevector {
        n,
        amplitudes: vec![Complex64::new(amp, 0.0); 1 << n],
    })
}

/// Offset-free Ising energies for every basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalCost {
    n: usize,
    energies: Vec<f64>,
}

impl DiagonalCost {
    pub fn from_energies(energies: Vec<f64>) -> Result<Self> {
        let len = energies.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "{len} energies is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        Ok(Self { n, energies })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn build_diagonal(ham: &IsingHamiltonian) -> Result<DiagonalCost> {
    check_qubits(ham.n)?;
    let energies = (0..1usize << ham.n)
        .map(|b| ising_energy(ham, &spins_from_bits(&Bitstring::from_index(b, ham.n))))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagonalCost {
        n: ham.n,
        energies,
    })
}

/// Per-layer angles, `gamma[k]` for the phase and `beta[k]` for the mixer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QaoaParams {
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gamma: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || gamma.len() != beta.len() {
            return Err(Error::InvalidArgument(format!(
                "need p >= 1 gammas and betas of equal length, got {} and {}",
                gamma.len(),
                beta.len()
            )));
        }
        Ok(Self { gamma, beta })
    }

    /// Splits `[gamma_1..gamma_p, beta_1..beta_p]`.
    pub fn from_flat(theta: &[f64]) -> Result<Self> {
        if !theta.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "flat parameter vector has odd length {}",
                theta.len()
            )));
        }
        let (g, b) = theta.split_at(theta.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    pub fn zeros(p: usize) -> Result<Self> {
        Self::new(vec![0.0; p], vec![0.0; p])
    }

    pub fn depth(&self) -> usize {
        self.gamma.len()
    }
}

/// Final state of the QAOA circuit for a precomputed diagonal.
pub fn qaoa_state_with_diagonal(d: &DiagonalCost, params: &QaoaParams) -> Result<Statevector> {
    let mut sv = uniform_state(d.n)?;
    for (&gamma, &beta) in params.gamma.iter().zip(&params.beta) {
        sv.apply_phase(d, gamma)?;
        sv.apply_mixer(beta);
    }
    Ok(sv)
}

pub fn qaoa_state(ham: &IsingHamiltonian, params: &QaoaParams) -> Result<Statevector> {
    qaoa_state_with_diagonal(&build_diagonal(ham)?, params)
}

/// `sum_b |a_b|^2 E(b) + offset`.
pub fn expectation(sv: &Statevector, d: &DiagonalCost, offset: f64) -> Result<f64> {
    check_dim(sv.amplitudes.len(), d.energies.len())?;
    let e: f64 = sv
        .amplitudes
        .iter()
        .zip(&d.energies)
        .map(|(a, e)| a.norm_sqr() * e)
        .sum();
    Ok(e + offset)
}

/// Basis-state probabilities keyed by bitstring, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct ProbabilityTable(BTreeMap<Bitstring, f64>);

impl ProbabilityTable {
    pub fn get(&self, x: &Bitstring) -> Option<f64> {
        self.0.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bitstring, f64)> {
        self.0.iter().map(|(k, &v)| (k, v))
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }
}

impl FromIterator<(Bitstring, f64)> for ProbabilityTable {
    fn from_iter<I: IntoIterator<Item = (Bitstring, f64)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// All `2^n` probabilities, zeros included.
pub fn probabilities(sv: &Statevector) -> ProbabilityTable {
    sv.amplitudes
        .iter()
        .enumerate()
        .map(|(b, a)| (Bitstring::from_index(b, sv.n), a.norm_sqr()))
        .collect()
}

/// Highest-probability bitstring; ties go to the lexicographically smallest.
pub fn most_probable_bitstring(probs: &ProbabilityTable) -> Result<Bitstring> {
    let mut best: Option<(&Bitstring, f64)> = None;
    for (x, p) in probs.iter() {
        if best.is_none_or(|(_, bp)| p > bp) {
            best = Some((x, p));
        }
    }
    best.map(|(x, _)| x.clone())
        .ok_or_else(|| Error::InvalidArgument("probability table is empty".into()))
}

/// Lowest QUBO cost among bitstrings with probability above
/// `support_epsilon`; ties go to the lexicographically smallest.
pub fn min_energy_bitstring(
    probs: &ProbabilityTable,
    q: &QuboProblem,
    support_epsilon: f64,
) -> Result<(Bitstring, f64)> {
    let mut best: Option<(&Bitstring, f64)> = None;
    for (x, p) in probs.iter() {
        if p <= support_epsilon {
            continue;
        }
        let cost = qubo_cost(q, x)?;
        if best.is_none_or(|(_, bc)| cost < bc) {
            best = Some((x, cost));
        }
    }
    best.map(|(x, c)| (x.clone(), c))
        .ok_or(Error::EmptySupport(support_epsilon))
}
