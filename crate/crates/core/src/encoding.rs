//! Minimum vertex cover as a QUBO, and the QUBO to Ising change of variables.
//!
//! The QUBO cost for penalty weight `A` and vertex weight `B` is
//!
//! ```text
//! cost(x) = A * sum_{(u,v) in E} (1 - x_u)(1 - x_v) + B * sum_i x_i
//! ```
//!
//! Substituting `x_i = (1 - z_i) / 2` with `z_i in {-1, +1}` gives an Ising
//! Hamiltonian `sum_i h_i z_i + sum_{i<j} J_ij z_i z_j` plus a scalar offset.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeOrder};

/// Assignment of one bit per variable/qubit.
///
/// Text form puts variable 0 in the leftmost character. Ordering is
/// lexicographic on that text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    /// Bit `i` of the result is bit `i` of `index`.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|i| (index >> i) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "bitstring contains `{other}`"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `z_i = 1 - 2 x_i`: bit 0 is spin +1, bit 1 is spin -1.
pub fn spins_from_bits(x: &Bitstring) -> Vec<i8> {
    x.bits().iter().map(|&b| if b { -1 } else { 1 }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuboParams {
    /// Weight of each uncovered-edge penalty.
    pub penalty_a: f64,
    /// Weight of each selected vertex.
    pub cost_b: f64,
}

impl Default for QuboParams {
    fn default() -> Self {
        Self {
            penalty_a: 2.0,
            cost_b: 1.0,
        }
    }
}

impl QuboParams {
    pub fn validate(&self) -> Result<()> {
        let Self { penalty_a, cost_b } = *self;
        if !(penalty_a.is_finite() && cost_b.is_finite() && cost_b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "penalty weights must be finite and positive (A = {penalty_a}, B = {cost_b})"
            )));
        }
        if penalty_a <= cost_b {
            return Err(Error::InvalidArgument(format!(
                "penalty_a ({penalty_a}) must exceed cost_b ({cost_b})"
            )));
        }
        Ok(())
    }
}

fn serialize_pairs<S: Serializer>(
    map: &BTreeMap<(usize, usize), f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(map.iter().map(|(&(i, j), &c)| (i, j, c)))
}

/// Quadratic pseudo-Boolean cost with upper-triangular pair storage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuboProblem {
    pub n: usize,
    pub constant: f64,
    pub linear: Vec<f64>,
    #[serde(serialize_with = "serialize_pairs")]
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub node_order: NodeOrder,
}

impl QuboProblem {
    /// Checks the storage invariants: `i < j < n` for every pair and a
    /// linear vector of length `n`.
    pub fn validate(&self) -> Result<()> {
        if self.linear.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: self.linear.len(),
            });
        }
        if self.node_order.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: self.node_order.len(),
            });
        }
        check_pairs(&self.quadratic, self.n)
    }
}

fn check_pairs(pairs: &BTreeMap<(usize, usize), f64>, n: usize) -> Result<()> {
    match pairs.keys().find(|&&(i, j)| !(i < j && j < n)) {
        Some(&(i, j)) => Err(Error::InvalidArgument(format!(
            "pair ({i}, {j}) is not strictly upper-triangular within {n} variables"
        ))),
        None => Ok(()),
    }
}

/// MVC QUBO: constant `A*m`, linear `B - A*deg(i)`, and `A` on every edge.
pub fn build_mvc_qubo(g: &Graph, order: &NodeOrder, params: QuboParams) -> Result<QuboProblem> {
    params.validate()?;
    order.validate_for(g)?;
    let pos = order.positions();
    let QuboParams { penalty_a, cost_b } = params;

    let linear = order
        .ids()
        .iter()
        .map(|&u| cost_b - penalty_a * g.degree(u) as f64)
        .collect();
    let quadratic = g
        .edges()
        .map(|(u, v)| {
            let (i, j) = (pos[&u], pos[&v]);
            ((i.min(j), i.max(j)), penalty_a)
        })
        .collect();

    Ok(QuboProblem {
        n: order.len(),
        constant: penalty_a * g.edge_count() as f64,
        linear,
        quadratic,
        node_order: order.clone(),
    })
}

pub fn qubo_cost(q: &QuboProblem, x: &Bitstring) -> Result<f64> {
    if x.len() != q.n {
        return Err(Error::Dimension {
            expected: q.n,
            actual: x.len(),
        });
    }
    let bits = x.bits();
    let mut cost = q.constant;
    for (c, &b) in q.linear.iter().zip(bits) {
        if b {
            cost += c;
        }
    }
    for (&(i, j), &c) in &q.quadratic {
        if bits[i] && bits[j] {
            cost += c;
        }
    }
    Ok(cost)
}

/// Ising form: fields `h` on single Z terms, couplings `j` on ZZ pairs and an
/// identity `offset`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsingHamiltonian {
    pub n: usize,
    pub h: Vec<f64>,
    #[serde(serialize_with = "serialize_pairs")]
    pub j: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
}

impl IsingHamiltonian {
    pub fn new(h: Vec<f64>, j: BTreeMap<(usize, usize), f64>, offset: f64) -> Result<Self> {
        let n = h.len();
        check_pairs(&j, n)?;
        Ok(Self { n, h, j, offset })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            h: vec![0.0; n],
            j: BTreeMap::new(),
            offset: 0.0,
        }
    }
}

/// Substitutes `x_i = (1 - z_i) / 2` into `q` and collects terms.
pub fn qubo_to_ising(q: &QuboProblem) -> Result<IsingHamiltonian> {
    q.validate()?;
    let mut h = vec![0.0; q.n];
    let mut j = BTreeMap::new();
    let mut offset = q.constant;

    for (i, &c) in q.linear.iter().enumerate() {
        h[i] -= c / 2.0;
        offset += c / 2.0;
    }
    for (&(a, b), &c) in &q.quadratic {
        if c == 0.0 {
            continue;
        }
        *j.entry((a, b)).or_insert(0.0) += c / 4.0;
        h[a] -= c / 4.0;
        h[b] -= c / 4.0;
        offset += c / 4.0;
    }
    Ok(IsingHamiltonian {
        n: q.n,
        h,
        j,
        offset,
    })
}

/// `sum h_i z_i + sum J_ij z_i z_j`, without the offset.
pub fn ising_energy(ham: &IsingHamiltonian, z: &[i8]) -> Result<f64> {
    if z.len() != ham.n {
        return Err(Error::Dimension {
            expected: ham.n,
            actual: z.len(),
        });
    }
    let field: f64 = ham.h.iter().zip(z).map(|(h, &s)| h * f64::from(s)).sum();
    let coupling: f64 = ham
        .j
        .iter()
        .map(|(&(a, b), c)| c * f64::from(z[a] * z[b]))
        .sum();
    Ok(field + coupling)
}
