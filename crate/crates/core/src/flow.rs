//! The three-layer flow network whose maximum flow decides whether
//! `2c >= mad(G)`, plus an integral max-flow solver and minimum-cut
//! extraction.
//!
//! Nodes are: a source, a sink, one node per graph edge and one per graph
//! vertex. The source feeds every edge node with capacity `scale` (the
//! rational test density `c = p/q` scaled to integers), edge nodes feed
//! their two endpoints with effectively infinite capacity, and every
//! vertex drains into the sink with capacity `p`. All capacities are
//! integers, so the computed maximum flow is integral.
//!
//! The solver is level-graph augmentation (Dinic) with a fixed arc order,
//! so identical networks always produce identical flows.

use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;
use crate::{Error, Result};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: u32,
    cap: i128,
    rev: u32,
}

/// Handle of a forward arc: node index and position in its arc list.
#[derive(Clone, Copy, Debug)]
struct ArcRef {
    node: u32,
    idx: u32,
}

/// The network `F(G, c)` with capacities scaled to integers.
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    scale: i128,
    vertex_cap: i128,
    inf_cap: i128,
    edge_endpoints: Vec<(usize, usize)>,
    n_vertices: usize,
    adj: Vec<Vec<Arc>>,
    layer1: Vec<ArcRef>,
    layer2: Vec<[ArcRef; 2]>,
    layer3: Vec<ArcRef>,
}

/// An integral feasible s-t flow, stored per graph edge and vertex rather
/// than per arc: the amount entering each edge node, its split between the
/// two endpoints, and the amount each vertex forwards to the sink.
#[derive(Clone, Debug)]
pub struct Flow {
    pub(crate) value: i128,
    pub(crate) scale: i128,
    pub(crate) vertex_cap: i128,
    pub(crate) edge_flow: Vec<i128>,
    /// Per edge `(u, v)` with `u < v`: flow sent toward `u` and toward `v`.
    pub(crate) splits: Vec<(i128, i128)>,
    pub(crate) vertex_inflow: Vec<i128>,
}

impl Flow {
    pub fn value(&self) -> i128 {
        self.value
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn vertex_cap(&self) -> i128 {
        self.vertex_cap
    }

    /// Per-edge split `(toward u, toward v)` for the canonical edge `(u, v)`.
    pub fn splits(&self) -> &[(i128, i128)] {
        &self.splits
    }

    pub fn vertex_inflow(&self) -> &[i128] {
        &self.vertex_inflow
    }
}

impl FlowNetwork {
    /// Builds `F(g, c)` with capacities scaled by the denominator of `c`.
    pub fn build(g: &Graph, c: &Rational) -> FlowNetwork {
        FlowNetwork::build_scaled(g, c, c.denominator())
    }

    /// Builds `F(g, c)` with capacities scaled by an explicit factor;
    /// `scale * c` must be an integer (the cycle-cancelling construction
    /// scales by `2b` for `mad = a/b`).
    pub fn build_scaled(g: &Graph, c: &Rational, scale: i128) -> FlowNetwork {
        assert!(!c.is_negative(), "test density must be nonnegative");
        assert!(scale >= 1, "scale must be positive");
        assert_eq!(
            (c.numerator() * scale) % c.denominator(),
            0,
            "scale must clear the denominator of c"
        );
        let vertex_cap = c.numerator() * scale / c.denominator();
        let m = g.edge_count();
        let n = g.vertex_count();
        let inf_cap = 2 * scale * m as i128 + 1;

        // Node layout: source, sink, one node per edge, one per vertex.
        let node_count = 2 + m + n;
        let source = 0;
        let sink = 1;
        let edge_node = |e: usize| 2 + e;
        let vertex_node = |v: usize| 2 + m + v;

        let mut net = FlowNetwork {
            node_count,
            source,
            sink,
            scale,
            vertex_cap,
            inf_cap,
            edge_endpoints: g.edges().to_vec(),
            n_vertices: n,
            adj: vec![Vec::new(); node_count],
            layer1: Vec::with_capacity(m),
            layer2: Vec::with_capacity(m),
            layer3: Vec::with_capacity(n),
        };
        for e in 0..m {
            let h = net.add_arc(source, edge_node(e), scale);
            net.layer1.push(h);
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let hu = net.add_arc(edge_node(e), vertex_node(u), inf_cap);
            let hv = net.add_arc(edge_node(e), vertex_node(v), inf_cap);
            net.layer2.push([hu, hv]);
        }
        for v in 0..n {
            let h = net.add_arc(vertex_node(v), sink, vertex_cap);
            net.layer3.push(h);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i128) -> ArcRef {
        let idx = self.adj[from].len() as u32;
        let rev = self.adj[to].len() as u32;
        self.adj[from].push(Arc {
            to: to as u32,
            cap,
            rev,
        });
        self.adj[to].push(Arc {
            to: from as u32,
            cap: 0,
            rev: idx,
        });
        ArcRef {
            node: from as u32,
            idx,
        }
    }

    pub fn scale(&self) -> i128 {
        self.scale
    }

    pub fn vertex_cap(&self) -> i128 {
        self.vertex_cap
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_endpoints.len()
    }

    /// The flow value of a saturating flow: `scale * |E|`.
    pub fn saturation_value(&self) -> i128 {
        self.scale * self.edge_endpoints.len() as i128
    }

    /// Computes an integral maximum flow. Deterministic for a fixed
    /// network: arcs are explored in construction order.
    pub fn max_flow(&self) -> Flow {
        let mut adj = self.adj.clone();
        let mut level = vec![-1i32; self.node_count];
        let mut iter = vec![0usize; self.node_count];
        let mut value = 0i128;
        loop {
            if !self.bfs_levels(&adj, &mut level) {
                break;
            }
            iter.iter_mut().for_each(|i| *i = 0);
            value += self.blocking_flow(&mut adj, &mut level, &mut iter);
        }
        self.extract_flow(&adj, value)
    }

    fn bfs_levels(&self, adj: &[Vec<Arc>], level: &mut [i32]) -> bool {
        level.iter_mut().for_each(|l| *l = -1);
        level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for arc in &adj[u] {
                if arc.cap > 0 && level[arc.to as usize] == -1 {
                    level[arc.to as usize] = level[u] + 1;
                    queue.push_back(arc.to as usize);
                }
            }
        }
        level[self.sink] >= 0
    }

    /// Saturates the level graph. The DFS is iterative: augmenting paths
    /// can zig-zag through reverse arcs, so recursion depth would grow
    /// with the network size.
    fn blocking_flow(&self, adj: &mut [Vec<Arc>], level: &mut [i32], iter: &mut [usize]) -> i128 {
        let mut total = 0i128;
        let mut path: Vec<(usize, usize)> = Vec::new();
        loop {
            let u = match path.last() {
                Some(&(node, idx)) => adj[node][idx].to as usize,
                None => self.source,
            };
            if u == self.sink {
                let mut aug = i128::MAX;
                for &(node, idx) in &path {
                    aug = aug.min(adj[node][idx].cap);
                }
                for &(node, idx) in &path {
                    let Arc { to, rev, .. } = adj[node][idx];
                    adj[node][idx].cap -= aug;
                    adj[to as usize][rev as usize].cap += aug;
                }
                total += aug;
                let first_saturated = path
                    .iter()
                    .position(|&(node, idx)| adj[node][idx].cap == 0)
                    .expect("bottleneck arc is saturated");
                path.truncate(first_saturated);
                continue;
            }
            let mut advanced = false;
            while iter[u] < adj[u].len() {
                let arc = adj[u][iter[u]];
                if arc.cap > 0 && level[arc.to as usize] == level[u] + 1 {
                    path.push((u, iter[u]));
                    advanced = true;
                    break;
                }
                iter[u] += 1;
            }
            if !advanced {
                level[u] = -1;
                match path.pop() {
                    Some((parent, _)) => iter[parent] += 1,
                    None => break,
                }
            }
        }
        total
    }

    fn extract_flow(&self, adj: &[Vec<Arc>], value: i128) -> Flow {
        let m = self.edge_endpoints.len();
        let mut edge_flow = Vec::with_capacity(m);
        let mut splits = Vec::with_capacity(m);
        for e in 0..m {
            let h = self.layer1[e];
            edge_flow.push(self.scale - adj[h.node as usize][h.idx as usize].cap);
            let [hu, hv] = self.layer2[e];
            let to_u = self.inf_cap - adj[hu.node as usize][hu.idx as usize].cap;
            let to_v = self.inf_cap - adj[hv.node as usize][hv.idx as usize].cap;
            splits.push((to_u, to_v));
        }
        let vertex_inflow = (0..self.n_vertices)
            .map(|v| {
                let h = self.layer3[v];
                self.vertex_cap - adj[h.node as usize][h.idx as usize].cap
            })
            .collect();
        Flow {
            value,
            scale: self.scale,
            vertex_cap: self.vertex_cap,
            edge_flow,
            splits,
            vertex_inflow,
        }
    }

    /// Rebuilds the residual arc capacities corresponding to `flow`.
    fn residual_adj(&self, flow: &Flow) -> Vec<Vec<Arc>> {
        let mut adj = self.adj.clone();
        let mut apply = |h: ArcRef, amount: i128| {
            let arc = adj[h.node as usize][h.idx as usize];
            adj[h.node as usize][h.idx as usize].cap -= amount;
            adj[arc.to as usize][arc.rev as usize].cap += amount;
        };
        for e in 0..self.edge_endpoints.len() {
            apply(self.layer1[e], flow.edge_flow[e]);
            let [hu, hv] = self.layer2[e];
            apply(hu, flow.splits[e].0);
            apply(hv, flow.splits[e].1);
        }
        for v in 0..self.n_vertices {
            apply(self.layer3[v], flow.vertex_inflow[v]);
        }
        adj
    }

    /// The set `W` of graph vertices on the source side of the residual
    /// reachability cut; their sink arcs are exactly the third-layer arcs
    /// of a minimum cut. `flow` must be maximum.
    pub fn min_cut_vertex_side(&self, flow: &Flow) -> VertexSet {
        let adj = self.residual_adj(flow);
        let mut seen = vec![false; self.node_count];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for arc in &adj[u] {
                if arc.cap > 0 && !seen[arc.to as usize] {
                    seen[arc.to as usize] = true;
                    queue.push_back(arc.to as usize);
                }
            }
        }
        let mut w = VertexSet::empty(self.n_vertices);
        let first_vertex_node = 2 + self.edge_endpoints.len();
        for v in 0..self.n_vertices {
            if seen[first_vertex_node + v] {
                w.insert(v);
            }
        }
        w
    }

    /// Validates capacity and conservation constraints of `flow` against
    /// this network. Used as a bug trap by callers that transform flows.
    pub fn check_flow(&self, flow: &Flow) -> Result<()> {
        let m = self.edge_endpoints.len();
        let fail = |msg: String| Err(Error::ContractViolation(msg));
        if flow.scale != self.scale || flow.vertex_cap != self.vertex_cap {
            return fail("flow scale does not match network scale".into());
        }
        if flow.edge_flow.len() != m || flow.splits.len() != m {
            return fail("flow edge arity mismatch".into());
        }
        let mut inflow = vec![0i128; self.n_vertices];
        for e in 0..m {
            let (u, v) = self.edge_endpoints[e];
            let (to_u, to_v) = flow.splits[e];
            if !(0..=self.scale).contains(&flow.edge_flow[e]) {
                return fail(format!("edge {e} violates first-layer capacity"));
            }
            if to_u < 0 || to_v < 0 {
                return fail(format!("edge {e} has a negative split"));
            }
            if to_u + to_v != flow.edge_flow[e] {
                return fail(format!("edge {e} violates conservation at its edge node"));
            }
            inflow[u] += to_u;
            inflow[v] += to_v;
        }
        for (v, &total) in inflow.iter().enumerate() {
            if total != flow.vertex_inflow[v] {
                return fail(format!("vertex {v} violates conservation"));
            }
            if total > self.vertex_cap {
                return fail(format!("vertex {v} exceeds its sink capacity"));
            }
        }
        if flow.value != flow.edge_flow.iter().sum::<i128>() {
            return fail("flow value does not match first-layer total".into());
        }
        Ok(())
    }
}
