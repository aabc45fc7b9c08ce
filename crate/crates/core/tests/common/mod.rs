//! Reference implementations used only by tests. Nothing here calls the
//! library's own solvers, so agreement is meaningful.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use qaoa_topobench::encoding::IsingHamiltonian;
use qaoa_topobench::graph::{Graph, NodeId};
use qaoa_topobench::rng::SplitMix64;

/// Erdos-Renyi G(n, p); may be disconnected.
pub fn gnp(n: usize, p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.next_f64() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new((0..n as NodeId).collect(), edges).unwrap()
}

/// Graphs on `0..n` with `n` in `lo..=hi`, each pair present with prob. 1/2.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n as NodeId {
                for v in u + 1..n as NodeId {
                    if mask[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new((0..n as NodeId).collect(), edges).unwrap()
        })
    })
}

/// Bit `i` of `mask` selects `g.nodes()[i]`.
pub fn mask_covers(g: &Graph, mask: u64) -> bool {
    let pos = |u: NodeId| g.nodes().iter().position(|&w| w == u).unwrap();
    g.edges().all(|(u, v)| mask >> pos(u) & 1 == 1 || mask >> pos(v) & 1 == 1)
}

/// Every subset scanned; returns the minimum size and all minimum masks.
pub fn all_minimum_covers(g: &Graph) -> (usize, Vec<u64>) {
    let n = g.node_count();
    let mut best = usize::MAX;
    let mut winners = Vec::new();
    for mask in 0..(1u64 << n) {
        if !mask_covers(g, mask) {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size < best {
            best = size;
            winners.clear();
        }
        if size == best {
            winners.push(mask);
        }
    }
    (best, winners)
}

/// The MVC objective evaluated straight from the graph, in natural order.
pub fn mvc_cost(g: &Graph, a: f64, b: f64, mask: u64) -> f64 {
    let bit = |u: NodeId| {
        let i = g.nodes().iter().position(|&w| w == u).unwrap();
        (mask >> i & 1) as f64
    };
    let penalty: f64 = g.edges().map(|(u, v)| (1.0 - bit(u)) * (1.0 - bit(v))).sum();
    a * penalty + b * mask.count_ones() as f64
}

fn kron_chain(factors: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// Single-qubit operator `op` on qubit `q` of `n`. Qubit 0 is the least
/// significant index bit, hence the rightmost tensor factor.
pub fn on_qubit(op: &DMatrix<Complex64>, q: usize, n: usize) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(2, 2);
    let factors: Vec<_> = (0..n)
        .rev()
        .map(|k| if k == q { op.clone() } else { id.clone() })
        .collect();
    kron_chain(&factors)
}

pub fn pauli_x() -> DMatrix<Complex64> {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    DMatrix::from_row_slice(2, 2, &[o, l, l, o])
}

pub fn pauli_z() -> DMatrix<Complex64> {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    DMatrix::from_row_slice(2, 2, &[l, o, o, -l])
}

/// Sum of h_i Z_i + J_ij Z_i Z_j, offset excluded.
pub fn ising_matrix(ham: &IsingHamiltonian) -> DMatrix<Complex64> {
    let n = ham.n;
    let dim = 1 << n;
    let z = pauli_z();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (i, &h) in ham.h.iter().enumerate() {
        m += on_qubit(&z, i, n) * Complex64::new(h, 0.0);
    }
    for (&(i, j), &c) in &ham.j {
        m += on_qubit(&z, i, n) * on_qubit(&z, j, n) * Complex64::new(c, 0.0);
    }
    m
}

pub fn mixer_matrix(n: usize) -> DMatrix<Complex64> {
    let dim = 1 << n;
    let x = pauli_x();
    (0..n).fold(DMatrix::zeros(dim, dim), |acc, q| acc + on_qubit(&x, q, n))
}

/// exp(a) by scaling and squaring around a truncated Taylor series.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let norm = a.iter().map(|c| c.norm()).fold(0.0, f64::max) * a.nrows() as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale /= 2.0;
        squarings += 1;
    }
    let scaled = a * Complex64::new(scale, 0.0);
    let dim = a.nrows();
    let mut term = DMatrix::<Complex64>::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..=24 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// exp(-i beta B) exp(-i gamma H) |+>^n as a dense vector.
pub fn dense_qaoa_p1(ham: &IsingHamiltonian, gamma: f64, beta: f64) -> Vec<Complex64> {
    let n = ham.n;
    let dim = 1 << n;
    let minus_i = Complex64::new(0.0, -1.0);
    let uc = expm(&(ising_matrix(ham) * (minus_i * gamma)));
    let ub = expm(&(mixer_matrix(n) * (minus_i * beta)));
    let plus = nalgebra::DVector::from_element(dim, Complex64::new((dim as f64).powf(-0.5), 0.0));
    (ub * uc * plus).iter().copied().collect()
}
