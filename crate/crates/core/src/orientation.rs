//! Orientation of the graph edges induced by a saturating flow, and the
//! cycle cancellation that makes it acyclic.
//!
//! With mad(G) = a/b and capacities scaled by 2b, a saturating flow pushes
//! 2b units through every edge node, split between the edge's endpoints.
//! An edge is directed toward the endpoint receiving more than b (more
//! than half a unit unscaled) and discarded on an exact b/b split. Cycles
//! in the resulting digraph are cancelled by shifting flow from the heavy
//! side to the light side of every cycle edge, which balances at least one
//! edge per pass and never creates a new directed edge.

use crate::flow::{Flow, FlowNetwork};
use crate::graph::Graph;
use crate::mad::mad_exact;
use crate::rational::Rational;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Per-edge classification relative to the canonical `(u, v)` pair with
/// `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeState {
    /// Directed `u -> v`: more than half the edge's flow goes to `v`.
    Forward,
    /// Directed `v -> u`.
    Backward,
    /// Balanced split; the edge does not appear in the digraph.
    Discarded,
}

/// The digraph induced by a saturating flow: each graph edge is directed
/// or discarded according to its flow split at scale `2b`.
#[derive(Clone, Debug)]
pub struct Orientation {
    half_scale: i128,
    splits: Vec<(i128, i128)>,
    cancellations: usize,
}

impl Orientation {
    /// Orientation of an edgeless graph.
    pub fn edgeless() -> Orientation {
        Orientation {
            half_scale: 1,
            splits: Vec::new(),
            cancellations: 0,
        }
    }

    /// The scaled half unit `b`; an endpoint receiving more than this is
    /// the head of its edge.
    pub fn half_scale(&self) -> i128 {
        self.half_scale
    }

    /// Flow split `(toward u, toward v)` of edge `e`.
    pub fn split(&self, e: usize) -> (i128, i128) {
        self.splits[e]
    }

    pub fn edge_state(&self, e: usize) -> EdgeState {
        let (to_u, to_v) = self.splits[e];
        if to_v > self.half_scale {
            EdgeState::Forward
        } else if to_u > self.half_scale {
            EdgeState::Backward
        } else {
            EdgeState::Discarded
        }
    }

    /// Number of cancellation passes that produced this orientation.
    pub fn cancellations(&self) -> usize {
        self.cancellations
    }

    /// Directed arcs `(tail, head)` in edge order.
    pub fn arcs(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .enumerate()
            .filter_map(|(e, &(u, v))| match self.edge_state(e) {
                EdgeState::Forward => Some((u, v)),
                EdgeState::Backward => Some((v, u)),
                EdgeState::Discarded => None,
            })
            .collect()
    }

    pub fn directed_edge_count(&self, g: &Graph) -> usize {
        self.arcs(g).len()
    }

    /// Out-neighbor lists of the digraph, ordered by edge index.
    pub fn out_adjacency(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for (tail, head) in self.arcs(g) {
            adj[tail].push(head);
        }
        adj
    }

    /// Topological order over all vertices, or a directed cycle as the
    /// counterexample.
    pub fn check_acyclic(&self, g: &Graph) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let n = g.vertex_count();
        let out = self.out_adjacency(g);
        let mut indeg = vec![0usize; n];
        for heads in &out {
            for &h in heads {
                indeg[h] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            done[v] = true;
            order.push(v);
            for &h in &out[v] {
                if !done[h] {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        ready.insert(h);
                    }
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Walk forward among unfinished vertices until one repeats.
        let start = (0..n).find(|&v| !done[v]).expect("cycle vertex exists");
        let mut seen_at = vec![usize::MAX; n];
        let mut walk = Vec::new();
        let mut v = start;
        loop {
            if seen_at[v] != usize::MAX {
                return Err(walk[seen_at[v]..].to_vec());
            }
            seen_at[v] = walk.len();
            walk.push(v);
            v = *out[v]
                .iter()
                .find(|&&h| !done[h])
                .expect("unfinished vertex keeps an unfinished out-neighbor");
        }
    }

    pub fn is_acyclic(&self, g: &Graph) -> bool {
        self.check_acyclic(g).is_ok()
    }
}

/// An integral flow saturating the first layer of `F(g, mad/2)` at scale
/// `2b`, where `mad(g) = a/b`. Errors on edgeless graphs, whose
/// orientation is trivially empty and handled upstream.
pub fn saturating_flow(g: &Graph) -> Result<Flow> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let mad = mad_exact(g)?
        .value
        .as_rational()
        .expect("graph with an edge has finite mad");
    saturating_flow_at(g, &mad)
}

/// As [`saturating_flow`] with a precomputed `mad = mad_exact(g)`.
pub fn saturating_flow_at(g: &Graph, mad: &Rational) -> Result<Flow> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let b = mad.denominator();
    let c = *mad * Rational::new(1, 2);
    let net = FlowNetwork::build_scaled(g, &c, 2 * b);
    let flow = net.max_flow();
    if flow.value() != net.saturation_value() {
        return Err(Error::ContractViolation(format!(
            "flow at c = mad/2 = {c} failed to saturate: {} of {}",
            flow.value(),
            net.saturation_value()
        )));
    }
    Ok(flow)
}

/// Classifies every edge of `g` by the split rule. `f` must saturate the
/// first layer at an even scale `2b`.
pub fn build_orientation(g: &Graph, f: &Flow) -> Orientation {
    assert_eq!(f.splits().len(), g.edge_count(), "flow built for another graph");
    assert_eq!(f.scale() % 2, 0, "saturating flow must be scaled by 2b");
    Orientation {
        half_scale: f.scale() / 2,
        splits: f.splits().to_vec(),
        cancellations: 0,
    }
}

/// Repeatedly cancels directed cycles of the induced digraph until it is
/// acyclic, returning the adjusted flow and its orientation. The input
/// flow is not mutated.
pub fn cancel_cycles(g: &Graph, f: &Flow) -> Result<(Flow, Orientation)> {
    cancel_cycles_observed(g, f, |_| {})
}

/// As [`cancel_cycles`], invoking `observer` with the adjusted flow after
/// every cancellation pass (used to audit conservation step by step).
pub fn cancel_cycles_observed(
    g: &Graph,
    f: &Flow,
    mut observer: impl FnMut(&Flow),
) -> Result<(Flow, Orientation)> {
    assert_eq!(f.scale() % 2, 0, "saturating flow must be scaled by 2b");
    let b = f.scale() / 2;
    let mut flow = f.clone();
    let mut cancellations = 0usize;
    while let Some(cycle) = find_directed_cycle(g, &flow, b) {
        // The lightest heavy side along the cycle determines the shift.
        let x = cycle
            .iter()
            .map(|&(e, head_is_v)| heavy_flow(&flow, e, head_is_v))
            .min()
            .expect("cycle is nonempty");
        let delta = x - b;
        if delta <= 0 {
            return Err(Error::ContractViolation(
                "directed edge with no flow majority".into(),
            ));
        }
        let mut balanced_one = false;
        for &(e, head_is_v) in &cycle {
            let (to_u, to_v) = flow.splits[e];
            flow.splits[e] = if head_is_v {
                (to_u + delta, to_v - delta)
            } else {
                (to_u - delta, to_v + delta)
            };
            let now = heavy_flow(&flow, e, head_is_v);
            debug_assert!(now >= b);
            if now == b {
                balanced_one = true;
            }
        }
        if !balanced_one {
            return Err(Error::ContractViolation(
                "cancellation pass discarded no edge".into(),
            ));
        }
        cancellations += 1;
        if cancellations > g.edge_count() {
            return Err(Error::ContractViolation(
                "cancellation did not terminate within |E| passes".into(),
            ));
        }
        observer(&flow);
    }
    let orientation = Orientation {
        half_scale: b,
        splits: flow.splits.clone(),
        cancellations,
    };
    Ok((flow, orientation))
}

fn heavy_flow(flow: &Flow, e: usize, head_is_v: bool) -> i128 {
    let (to_u, to_v) = flow.splits[e];
    if head_is_v {
        to_v
    } else {
        to_u
    }
}

/// First directed cycle in DFS order from the lowest-indexed vertex, as
/// `(edge index, head is larger endpoint)` arcs. Iterative DFS: the stack
/// would otherwise grow with the graph.
fn find_directed_cycle(g: &Graph, flow: &Flow, b: i128) -> Option<Vec<(usize, bool)>> {
    let n = g.vertex_count();
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (to_u, to_v) = flow.splits[e];
        if to_v > b {
            out[u].push((v, e));
        } else if to_u > b {
            out[v].push((u, e));
        }
    }

    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut depth_of = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        // Stack frame: (vertex, next out-arc index); arc_into[i] is the
        // arc leading into stack[i] (unused for the root).
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut arc_into: Vec<(usize, bool)> = vec![(usize::MAX, false)];
        color[root] = GRAY;
        depth_of[root] = 0;
        while let Some(&(v, next)) = stack.last() {
            if next >= out[v].len() {
                color[v] = BLACK;
                stack.pop();
                arc_into.pop();
                continue;
            }
            stack.last_mut().expect("frame exists").1 += 1;
            let (head, e) = out[v][next];
            match color[head] {
                WHITE => {
                    color[head] = GRAY;
                    depth_of[head] = stack.len();
                    arc_into.push((e, g.edges()[e].1 == head));
                    stack.push((head, 0));
                }
                GRAY => {
                    // Arcs from `head` down to `v`, then back via e.
                    let mut cycle: Vec<(usize, bool)> = arc_into[depth_of[head] + 1..].to_vec();
                    cycle.push((e, g.edges()[e].1 == head));
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::Flow;

    fn manual_flow(scale: i128, vertex_count: usize, splits: Vec<(i128, i128)>, g: &Graph) -> Flow {
        let mut vertex_inflow = vec![0i128; vertex_count];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            vertex_inflow[u] += splits[e].0;
            vertex_inflow[v] += splits[e].1;
        }
        Flow {
            value: splits.iter().map(|&(a, b)| a + b).sum(),
            scale,
            vertex_cap: i128::MAX / 4,
            edge_flow: splits.iter().map(|&(a, b)| a + b).collect(),
            splits,
            vertex_inflow,
        }
    }

    #[test]
    fn saturating_flow_forced_splits() {
        // Single edge, mad 1: vertex capacity a = 1 forces the even split.
        let k2 = Graph::complete(2);
        let f = saturating_flow(&k2).unwrap();
        assert_eq!(f.scale(), 2);
        assert_eq!(f.splits(), &[(1, 1)]);

        // Triangle, mad 2: inflow 6 over three vertices of capacity 2.
        let k3 = Graph::complete(3);
        let f = saturating_flow(&k3).unwrap();
        assert_eq!(f.vertex_inflow(), &[2, 2, 2]);

        // C4, mad 2: same counting argument.
        let c4 = Graph::cycle(4);
        let f = saturating_flow(&c4).unwrap();
        assert_eq!(f.vertex_inflow(), &[2, 2, 2, 2]);

        assert!(saturating_flow(&Graph::empty(3)).is_err());
    }

    #[test]
    fn orientation_classification() {
        let g = Graph::path(3); // edges (0,1), (1,2)
        let f = manual_flow(2, 3, vec![(0, 2), (1, 1)], &g);
        let o = build_orientation(&g, &f);
        assert_eq!(o.edge_state(0), EdgeState::Forward);
        assert_eq!(o.edge_state(1), EdgeState::Discarded);
        assert_eq!(o.arcs(&g), vec![(0, 1)]);

        let f = manual_flow(2, 3, vec![(2, 0), (1, 1)], &g);
        let o = build_orientation(&g, &f);
        assert_eq!(o.edge_state(0), EdgeState::Backward);
        assert_eq!(o.arcs(&g), vec![(1, 0)]);

        // The single edge of K2 is forced into balance.
        let k2 = Graph::complete(2);
        let f = saturating_flow(&k2).unwrap();
        let o = build_orientation(&k2, &f);
        assert_eq!(o.edge_state(0), EdgeState::Discarded);
    }

    #[test]
    fn cancelling_a_directed_triangle() {
        // Splits (2,0)/(2,0)/(0,2) orient the triangle cyclically at b=1;
        // one pass shifts 1 unit on every edge and discards all three.
        let k3 = Graph::complete(3);
        let f = manual_flow(2, 3, vec![(0, 2), (2, 0), (0, 2)], &k3);
        let (flow, o) = cancel_cycles(&k3, &f).unwrap();
        assert_eq!(flow.splits(), &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(o.cancellations(), 1);
        assert_eq!(o.directed_edge_count(&k3), 0);
        assert!(o.is_acyclic(&k3));
    }

    #[test]
    fn acyclic_input_is_unchanged() {
        // Path oriented 0 -> 1 -> 2: no cycle to cancel.
        let g = Graph::path(3);
        let f = manual_flow(2, 3, vec![(0, 2), (0, 2)], &g);
        let (flow, o) = cancel_cycles(&g, &f).unwrap();
        assert_eq!(flow.splits(), f.splits());
        assert_eq!(o.cancellations(), 0);
        assert_eq!(o.arcs(&g), vec![(0, 1), (1, 2)]);

        // Balanced C4: the digraph is empty, trivially acyclic.
        let c4 = Graph::cycle(4);
        let f = manual_flow(2, 4, vec![(1, 1); 4], &c4);
        let (_, o) = cancel_cycles(&c4, &f).unwrap();
        assert_eq!(o.directed_edge_count(&c4), 0);
    }

    #[test]
    fn acyclicity_check_finds_cycles() {
        let k3 = Graph::complete(3);
        // Edges (0,1), (0,2), (1,2): orient 0->1, 1->2, 2->0.
        let f = manual_flow(2, 3, vec![(0, 2), (2, 0), (0, 2)], &k3);
        let o = build_orientation(&k3, &f);
        let cycle = o.check_acyclic(&k3).unwrap_err();
        assert_eq!(cycle.len(), 3);

        assert!(Orientation::edgeless().check_acyclic(&Graph::empty(4)).is_ok());

        let g = Graph::path(3);
        let f = manual_flow(2, 3, vec![(0, 2), (0, 2)], &g);
        let o = build_orientation(&g, &f);
        assert_eq!(o.check_acyclic(&g).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn random_pipeline_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(424242);
        for _ in 0..120 {
            let n = rng.random_range(2..=12usize);
            let mut edges = std::collections::BTreeSet::new();
            for _ in 0..rng.random_range(1..=3 * n) {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = Graph::new(n, edges).unwrap();
            let mad = mad_exact(&g).unwrap().value.as_rational().unwrap();
            let f = saturating_flow_at(&g, &mad).unwrap();
            let b = f.scale() / 2;
            let a = f.vertex_cap();

            let net = FlowNetwork::build_scaled(&g, &(mad * Rational::new(1, 2)), 2 * b);
            let mut last_arcs = build_orientation(&g, &f).directed_edge_count(&g);
            let mut steps = 0usize;
            let (flow, o) = cancel_cycles_observed(&g, &f, |snapshot| {
                steps += 1;
                // Conservation and capacities hold after every pass.
                net.check_flow(snapshot).unwrap();
                let arcs = build_orientation(&g, snapshot).directed_edge_count(&g);
                assert!(arcs < last_arcs, "digraph did not shrink");
                last_arcs = arcs;
            })
            .unwrap();
            assert_eq!(steps, o.cancellations());
            assert!(o.cancellations() <= g.edge_count());
            assert!(o.is_acyclic(&g));
            net.check_flow(&flow).unwrap();

            // Each edge keeps at least b on the light side, so counting
            // every directed-in or discarded edge at b never exceeds the
            // true inflow, which respects the vertex capacity a.
            for v in 0..n {
                let mut inflow = 0i128;
                let mut in_or_discarded = 0i128;
                for (e, &(x, y)) in g.edges().iter().enumerate() {
                    let (to_u, to_v) = flow.splits()[e];
                    if x == v {
                        inflow += to_u;
                        if to_u >= b {
                            in_or_discarded += 1;
                        }
                    } else if y == v {
                        inflow += to_v;
                        if to_v >= b {
                            in_or_discarded += 1;
                        }
                    }
                }
                assert!(inflow <= a);
                assert!(b * in_or_discarded <= inflow);
            }
        }
    }
}
