//! Peeling the acyclic orientation into a set `S` with `G[S]`
//! `(k-1)`-degenerate and `mad(G - S) <= mad(G) - k`, plus an independent
//! verifier of those postconditions.
//!
//! The loop picks a vertex with no incoming arcs in the shrinking digraph
//! `H_f`, adds it to `S`, and evicts every remaining vertex that has
//! collected `k` neighbors inside `S` (adjacency measured in the original
//! graph throughout). Eviction counters are maintained incrementally, so
//! peeling is linear in the graph size up to the ready-queue bookkeeping.

use crate::graph::{Graph, VertexSet};
use crate::mad::mad_exact;
use crate::orientation::{cancel_cycles, saturating_flow_at, Orientation};
use crate::rational::MadValue;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// The decomposition output: the retained set `S`, its insertion order
/// (the degeneracy witness), and for every other vertex the `k`
/// S-neighbors that evicted it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub k: usize,
    pub set: VertexSet,
    pub peel_order: Vec<usize>,
    pub evicted: BTreeMap<usize, Vec<usize>>,
    pub report: Option<VerificationReport>,
}

/// Outcome of re-checking a decomposition from scratch. Optional fields
/// are `None` when the check does not apply (no peel data for external
/// sets; the independence and forest checks only exist for k = 1 and 2).
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub k: usize,
    pub mad_original: MadValue,
    pub mad_remainder: MadValue,
    pub degeneracy_ok: bool,
    pub mad_drop_ok: bool,
    pub peel_order_ok: Option<bool>,
    pub eviction_ok: Option<bool>,
    pub independence_ok: Option<bool>,
    pub forest_ok: Option<bool>,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.degeneracy_ok
            && self.mad_drop_ok
            && self.peel_order_ok.unwrap_or(true)
            && self.eviction_ok.unwrap_or(true)
            && self.independence_ok.unwrap_or(true)
            && self.forest_ok.unwrap_or(true)
    }
}

/// Algorithm `Solve(G, G_f, k)`: peel an in-degree-0 vertex of `H_f` into
/// `S`, then drop every vertex outside `S` adjacent to at least `k`
/// vertices of `S`, until `H_f` is empty. `o` must be an acyclic
/// orientation of `g`.
pub fn solve(g: &Graph, o: &Orientation, k: usize) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::ContractViolation("k must be positive".into()));
    }
    let n = g.vertex_count();
    let out_adj = o.out_adjacency(g);
    let mut indeg = vec![0usize; n];
    for heads in &out_adj {
        for &h in heads {
            indeg[h] += 1;
        }
    }
    let mut in_hf = vec![true; n];
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut s_neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut set = VertexSet::empty(n);
    let mut peel_order = Vec::new();
    let mut evicted = BTreeMap::new();
    let mut remaining = n;

    // Dropping a vertex from H_f releases its out-arcs.
    fn drop_vertex(
        v: usize,
        out_adj: &[Vec<usize>],
        in_hf: &mut [bool],
        indeg: &mut [usize],
        ready: &mut BTreeSet<usize>,
    ) {
        in_hf[v] = false;
        ready.remove(&v);
        for &h in &out_adj[v] {
            if in_hf[h] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.insert(h);
                }
            }
        }
    }

    while remaining > 0 {
        let Some(&x) = ready.iter().next() else {
            return Err(Error::ContractViolation(
                "nonempty H_f has no vertex without incoming arcs".into(),
            ));
        };
        drop_vertex(x, &out_adj, &mut in_hf, &mut indeg, &mut ready);
        remaining -= 1;
        set.insert(x);
        peel_order.push(x);

        for &w in g.neighbors(x) {
            if !in_hf[w] {
                continue;
            }
            s_neighbors[w].push(x);
            if s_neighbors[w].len() >= k {
                drop_vertex(w, &out_adj, &mut in_hf, &mut indeg, &mut ready);
                remaining -= 1;
                evicted.insert(w, std::mem::take(&mut s_neighbors[w]));
            }
        }
    }
    Ok(Decomposition {
        k,
        set,
        peel_order,
        evicted,
        report: None,
    })
}

/// Full pipeline: exact mad, saturating flow at scale 2b, cycle
/// cancellation, peeling, and verification. For `mad(g) < k` nothing is
/// ever evicted and `S = V(g)`.
pub fn decompose_by_k(g: &Graph, k: usize) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::ContractViolation("k must be positive".into()));
    }
    let orientation = if g.edge_count() == 0 {
        Orientation::edgeless()
    } else {
        let mad = mad_exact(g)?
            .value
            .as_rational()
            .expect("graph with an edge has finite mad");
        let flow = saturating_flow_at(g, &mad)?;
        let (_, orientation) = cancel_cycles(g, &flow)?;
        orientation
    };
    let mut d = solve(g, &orientation, k)?;
    d.report = Some(verify_decomposition(g, &d));
    Ok(d)
}

/// Decomposition with k = 1: `S` is an independent set and
/// `mad(G - S) <= mad(G) - 1`.
pub fn independent_set_removal(g: &Graph) -> Result<Decomposition> {
    decompose_by_k(g, 1)
}

/// Decomposition with k = 2: `G[S]` is a forest and
/// `mad(G - S) <= mad(G) - 2`.
pub fn forest_removal(g: &Graph) -> Result<Decomposition> {
    decompose_by_k(g, 2)
}

/// Re-checks an externally supplied set: degeneracy of `G[S]` and the
/// exact mad drop, plus the independence/forest property for k = 1/2.
pub fn verify_vertex_set(g: &Graph, s: &VertexSet, k: usize) -> VerificationReport {
    let mut failures = Vec::new();

    let (induced, _) = g
        .induced_subgraph(s)
        .expect("vertex set lives in the host graph");
    let (degeneracy, _) = induced.degeneracy();
    let degeneracy_ok = degeneracy < k as i64;
    if !degeneracy_ok {
        failures.push(format!(
            "G[S] has degeneracy {degeneracy}, exceeding k - 1 = {}",
            k - 1
        ));
    }

    let mad_original = match mad_exact(g) {
        Ok(r) => r.value,
        Err(e) => {
            failures.push(format!("mad(G) computation failed: {e}"));
            MadValue::NegInfinity
        }
    };
    let remainder = g
        .without_vertices(s)
        .expect("complement lives in the host graph")
        .0;
    let mad_remainder = match mad_exact(&remainder) {
        Ok(r) => r.value,
        Err(e) => {
            failures.push(format!("mad(G - S) computation failed: {e}"));
            MadValue::NegInfinity
        }
    };
    let mad_drop_ok = mad_remainder <= mad_original.minus_integer(k as i128);
    if !mad_drop_ok {
        failures.push(format!(
            "mad(G - S) = {mad_remainder} exceeds mad(G) - k = {} - {k}",
            mad_original
        ));
    }

    let independence_ok = (k == 1).then(|| {
        let ok = g.is_independent_set(s);
        if !ok {
            failures.push("S spans an edge although k = 1".into());
        }
        ok
    });
    let forest_ok = (k == 2).then(|| {
        let ok = induced.is_forest();
        if !ok {
            failures.push("G[S] contains a cycle although k = 2".into());
        }
        ok
    });

    VerificationReport {
        k,
        mad_original,
        mad_remainder,
        degeneracy_ok,
        mad_drop_ok,
        peel_order_ok: None,
        eviction_ok: None,
        independence_ok,
        forest_ok,
        failures,
    }
}

/// Independently recomputes every postcondition of a decomposition:
/// the peel-order degeneracy witness, eviction soundness, the exact mad
/// drop, and the k = 1/2 structure properties.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> VerificationReport {
    let mut report = verify_vertex_set(g, &d.set, d.k);

    // Replay the peel order: every vertex sees at most k-1 earlier picks
    // among its neighbors, and the order enumerates S exactly.
    let mut peel_ok = d.peel_order.len() == d.set.len()
        && d.peel_order.iter().all(|&v| d.set.contains(v));
    if peel_ok {
        let mut position = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in d.peel_order.iter().enumerate() {
            if position[v] != usize::MAX {
                peel_ok = false;
                break;
            }
            position[v] = i;
        }
        if peel_ok {
            for (i, &v) in d.peel_order.iter().enumerate() {
                let earlier = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| position[w] < i)
                    .count();
                if earlier > d.k - 1 {
                    report.failures.push(format!(
                        "peel order admits {earlier} earlier neighbors at vertex {v}, k - 1 = {}",
                        d.k - 1
                    ));
                    peel_ok = false;
                    break;
                }
            }
        } else {
            report.failures.push("peel order repeats a vertex".into());
        }
    } else {
        report
            .failures
            .push("peel order does not enumerate S".into());
    }
    report.peel_order_ok = Some(peel_ok);

    // Every vertex outside S must have been evicted by k distinct
    // S-neighbors adjacent to it.
    let mut eviction_ok = true;
    for v in 0..g.vertex_count() {
        let in_s = d.set.contains(v);
        match d.evicted.get(&v) {
            Some(_) if in_s => {
                report
                    .failures
                    .push(format!("vertex {v} is both retained and evicted"));
                eviction_ok = false;
            }
            Some(evictors) => {
                let distinct: BTreeSet<_> = evictors.iter().collect();
                if evictors.len() != d.k
                    || distinct.len() != evictors.len()
                    || !evictors
                        .iter()
                        .all(|&x| d.set.contains(x) && g.has_edge(x, v))
                {
                    report.failures.push(format!(
                        "vertex {v} lacks {k} adjacent evictors inside S",
                        k = d.k
                    ));
                    eviction_ok = false;
                }
            }
            None if !in_s => {
                report
                    .failures
                    .push(format!("vertex {v} left H_f through no channel"));
                eviction_ok = false;
            }
            None => {}
        }
    }
    report.eviction_ok = Some(eviction_ok);
    report
}
