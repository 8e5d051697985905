//! Immutable simple-graph representation and elementary structural
//! queries: degeneracy, girth, components, induced subgraphs.
//!
//! Vertices are dense indices `0..n`; external labels live at the I/O
//! boundary only. Graphs are immutable after construction, so every query
//! is re-entrant.

use crate::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// A set of vertices of a fixed host graph, stored as a bitset over
/// `0..universe`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
    count: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> VertexSet {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
            count: 0,
        }
    }

    pub fn full(universe: usize) -> VertexSet {
        let mut s = VertexSet::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Result<VertexSet> {
        let mut s = VertexSet::empty(universe);
        for v in iter {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.count += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[v / 64] &= !(1 << (v % 64));
        self.count -= 1;
        true
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&v| self.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.universe);
        for v in 0..self.universe {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

/// A simple undirected graph: no self-loops, no parallel edges. The edge
/// list is kept sorted with `u < v` in each pair, and adjacency lists are
/// sorted, so all traversals are deterministic.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Graph> {
        let mut normalized: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: a.max(b),
                    vertex_count: n,
                });
            }
            if a == b {
                return Err(Error::ContractViolation(format!(
                    "self-loop at vertex {a} in a simple graph"
                )));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ContractViolation(format!(
                "parallel edge {:?} in a simple graph",
                w[0]
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n, []).expect("edgeless graph is always valid")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Subgraph induced on `s`, plus the map from new indices back to the
    /// original ones (ascending).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.universe() != self.n {
            return Err(Error::VertexOutOfRange {
                vertex: s.universe().saturating_sub(1),
                vertex_count: self.n,
            });
        }
        let old_of_new: Vec<usize> = s.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (new_of_old[u], new_of_old[v]));
        let g = Graph::new(old_of_new.len(), edges)?;
        Ok((g, old_of_new))
    }

    /// Subgraph induced on the complement of `s` (i.e. `G - s`).
    pub fn without_vertices(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.induced_subgraph(&s.complement())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Degeneracy together with a minimum-degree elimination order.
    ///
    /// Returns `-1` for the empty graph so that "is `(k-1)`-degenerate" is
    /// vacuously true for an empty vertex set. Ties in the minimum-degree
    /// extraction break toward the smallest vertex index.
    pub fn degeneracy(&self) -> (i64, Vec<usize>) {
        if self.n == 0 {
            return (-1, Vec::new());
        }
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; self.n];
        let mut queue: BTreeSet<(usize, usize)> = (0..self.n).map(|v| (deg[v], v)).collect();
        let mut order = Vec::with_capacity(self.n);
        let mut k = 0i64;
        while let Some(&(d, v)) = queue.iter().next() {
            queue.remove(&(d, v));
            alive[v] = false;
            k = k.max(d as i64);
            order.push(v);
            for &w in self.neighbors(v) {
                if alive[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        (k, order)
    }

    /// Whether degeneracy is at most `k`, with the elimination order as a
    /// witness.
    pub fn is_k_degenerate(&self, k: i64) -> (bool, Vec<usize>) {
        let (d, order) = self.degeneracy();
        (d <= k, order)
    }

    /// Length of the shortest cycle, or `None` for forests.
    ///
    /// One BFS per start vertex; over all start vertices the minimum of
    /// `dist(u) + dist(w) + 1` across non-tree edges `uw` is exact.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if best == 3 {
                break;
            }
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if w != parent[u] {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Partition of the vertices into maximal connected pieces, ordered by
    /// smallest contained vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff `s` spans no edge of the graph.
    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| !(s.contains(u) && s.contains(v)))
    }

    /// True iff the graph is acyclic. A simple graph is a forest exactly
    /// when every component has one edge fewer than it has vertices.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.connected_components().len() == self.n
    }
}
