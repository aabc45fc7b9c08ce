//! Exact minimum vertex cover by exhaustive search.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Largest graph the exhaustive solver accepts.
pub const MAX_BRUTE_FORCE_NODES: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCoverSolution {
    pub cover: BTreeSet<NodeId>,
    pub size: usize,
}

/// True iff every edge of `g` has an endpoint in `s`.
pub fn is_vertex_cover(g: &Graph, s: &BTreeSet<NodeId>) -> Result<bool> {
    if let Some(&u) = s.iter().find(|&&u| !g.contains(u)) {
        return Err(Error::UnknownNode(u));
    }
    Ok(g.edges().all(|(u, v)| s.contains(&u) || s.contains(&v)))
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Minimum vertex cover, enumerating subset sizes upward and returning the
/// lexicographically first cover (over the sorted node list) of the
/// smallest size.
pub fn solve_classical_mvc(g: &Graph) -> Result<VertexCoverSolution> {
    let n = g.node_count();
    if n > MAX_BRUTE_FORCE_NODES {
        return Err(Error::SizeLimit {
            what: "nodes",
            value: n,
            max: MAX_BRUTE_FORCE_NODES,
        });
    }
    let mut sorted = g.nodes().to_vec();
    sorted.sort_unstable();
    let pos = |u: NodeId| sorted.binary_search(&u).unwrap();
    let edge_masks: Vec<u32> = g
        .edges()
        .map(|(u, v)| (1u32 << pos(u)) | (1u32 << pos(v)))
        .collect();

    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0u32, |m, &i| m | (1 << i));
            if edge_masks.iter().all(|e| e & mask != 0) {
                return Ok(VertexCoverSolution {
                    cover: idx.iter().map(|&i| sorted[i]).collect(),
                    size: k,
                });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full node set always covers every edge")
}
