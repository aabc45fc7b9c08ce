//! Seeded synthetic city graphs and small named families.
//!
//! `planned_city` is a rectangular street grid (low degree variance).
//! `organic_city` is a random geometric graph grown further by preferential
//! attachment (irregular, hub-heavy, high degree variance).

use std::collections::BTreeSet;

use crate::graph::{Graph, NodeId};
use crate::rng::SplitMix64;

pub const PLANNED_ROWS: usize = 8;
pub const PLANNED_COLS: usize = 8;
pub const ORGANIC_SEED: u64 = 7;
pub const ORGANIC_GEOMETRIC_NODES: usize = 40;
pub const ORGANIC_RADIUS: f64 = 0.22;
pub const ORGANIC_ATTACHED_NODES: usize = 30;
pub const ORGANIC_ATTACHMENT_EDGES: usize = 2;

fn build(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
    Graph::new((0..n as NodeId).collect(), edges).expect("generator yields a simple graph")
}

pub fn complete(n: usize) -> Graph {
    let n64 = n as NodeId;
    build(n, (0..n64).flat_map(|u| (u + 1..n64).map(move |v| (u, v))))
}

/// Hub 0 joined to leaves `1..n`.
pub fn star(n: usize) -> Graph {
    build(n, (1..n as NodeId).map(|v| (0, v)))
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as NodeId).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 nodes");
    let n64 = n as NodeId;
    build(n, (0..n64).map(|v| (v, (v + 1) % n64)))
}

/// Node `r * cols + c` sits at row `r`, column `c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| (r * cols + c) as NodeId;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    build(rows * cols, edges)
}

/// Uniform random tree (each node `v > 0` hooks onto a random earlier node)
/// plus every other pair with probability `extra_p`.
pub fn random_connected(n: usize, extra_p: f64, rng: &mut SplitMix64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.below(v);
        edges.insert((u as NodeId, v as NodeId));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < extra_p {
                edges.insert((u as NodeId, v as NodeId));
            }
        }
    }
    build(n, edges)
}

pub fn planned_city() -> Graph {
    grid(PLANNED_ROWS, PLANNED_COLS)
}

fn component_labels(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = s;
                    stack.push(v);
                }
            }
        }
    }
    label
}

pub fn organic_city() -> Graph {
    let mut rng = SplitMix64::new(ORGANIC_SEED);
    let g = ORGANIC_GEOMETRIC_NODES;
    let pts: Vec<(f64, f64)> = (0..g).map(|_| (rng.next_f64(), rng.next_f64())).collect();
    let dist2 = |a: usize, b: usize| {
        let (dx, dy) = (pts[a].0 - pts[b].0, pts[a].1 - pts[b].1);
        dx * dx + dy * dy
    };

    let mut edges = BTreeSet::new();
    for u in 0..g {
        for v in u + 1..g {
            if dist2(u, v) <= ORGANIC_RADIUS * ORGANIC_RADIUS {
                edges.insert((u, v));
            }
        }
    }
    // Stitch stray components onto the one containing node 0 via the
    // geometrically shortest bridge.
    loop {
        let label = component_labels(g, &edges);
        let Some((u, v)) = (0..g)
            .filter(|&a| label[a] == label[0])
            .flat_map(|a| (0..g).filter(|&b| label[b] != label[0]).map(move |b| (a, b)))
            .min_by(|&(a, b), &(c, d)| dist2(a, b).total_cmp(&dist2(c, d)))
        else {
            break;
        };
        edges.insert((u.min(v), u.max(v)));
    }

    let mut degree = vec![0usize; g + ORGANIC_ATTACHED_NODES];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    for new in g..g + ORGANIC_ATTACHED_NODES {
        let mut targets = BTreeSet::new();
        while targets.len() < ORGANIC_ATTACHMENT_EDGES {
            let total: usize = (0..new).filter(|t| !targets.contains(t)).map(|t| degree[t]).sum();
            let mut ticket = rng.below(total);
            for t in (0..new).filter(|t| !targets.contains(t)) {
                if ticket < degree[t] {
                    targets.insert(t);
                    break;
                }
                ticket -= degree[t];
            }
        }
        for t in targets {
            edges.insert((t, new));
            degree[t] += 1;
            degree[new] += 1;
        }
    }

    build(
        g + ORGANIC_ATTACHED_NODES,
        edges.into_iter().map(|(u, v)| (u as NodeId, v as NodeId)),
    )
}
