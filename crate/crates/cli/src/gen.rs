//! Deterministic graph generators for test corpora and benchmarks.
//! Random kinds are seeded; identical seeds give identical edge lists.

use crate::edgelist::LabeledGraph;
use madkit_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn indexed_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

fn labeled(graph: Graph) -> LabeledGraph {
    let labels = indexed_labels(graph.vertex_count());
    LabeledGraph { graph, labels }
}

/// Uniform simple graph with exactly `m` distinct edges, by rejection
/// sampling.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<LabeledGraph, String> {
    let max_m = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > max_m {
        return Err(format!(
            "{m} edges requested but a simple graph on {n} vertices holds at most {max_m}"
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Ok(labeled(Graph::new(n, edges).expect("sampled edges are simple")))
}

pub fn cycle(n: usize) -> Result<LabeledGraph, String> {
    if n < 3 {
        return Err("a cycle needs at least 3 vertices".into());
    }
    Ok(labeled(Graph::cycle(n)))
}

pub fn complete(n: usize) -> Result<LabeledGraph, String> {
    Ok(labeled(Graph::complete(n)))
}

/// Grid graph on `rows x cols` vertices in row-major order.
pub fn grid(rows: usize, cols: usize) -> Result<LabeledGraph, String> {
    let n = rows.checked_mul(cols).ok_or("grid too large")?;
    let at = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Ok(labeled(Graph::new(n, edges).expect("grid is simple")))
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn tree(n: usize, seed: u64) -> Result<LabeledGraph, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    Ok(labeled(Graph::new(n, edges).expect("tree is simple")))
}
