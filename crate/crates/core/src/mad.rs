//! Exact computation of the maximum average degree via the flow
//! characterization: the maximum flow in `F(G, c)` saturates the first
//! layer if and only if `2c >= mad(G)`.
//!
//! `mad_exact` bisects on the test density with exact rationals until the
//! bracket is narrower than the gap between any two achievable densities
//! (which are fractions with denominator at most `n`), snaps to the unique
//! candidate, and confirms both sides of the boundary with two more flow
//! computations. The witness set is read off a minimum cut just below the
//! boundary.

use crate::flow::FlowNetwork;
use crate::graph::{Graph, VertexSet};
use crate::rational::{snap_to_bounded_denominator, MadValue, Rational};
use crate::{Error, Result};

/// Exact mad value plus a vertex set inducing a subgraph of that exact
/// density (empty when the value is `-inf` or `0`).
#[derive(Clone, Debug)]
pub struct MadResult {
    pub value: MadValue,
    pub witness: VertexSet,
}

/// Decides `2c >= mad(g)` with one max-flow computation.
pub fn mad_decision(g: &Graph, c: &Rational) -> bool {
    assert!(!c.is_negative(), "test density must be nonnegative");
    let net = FlowNetwork::build(g, c);
    net.max_flow().value() == net.saturation_value()
}

/// Exact maximum average degree, with a maximum-density witness set.
pub fn mad_exact(g: &Graph) -> Result<MadResult> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(MadResult {
            value: MadValue::NegInfinity,
            witness: VertexSet::empty(0),
        });
    }
    if g.edge_count() == 0 {
        return Ok(MadResult {
            value: MadValue::finite(Rational::ZERO),
            witness: VertexSet::empty(n),
        });
    }

    let nn = n as i128;
    let half = Rational::new(1, 2);
    // Bracket invariant: decision(lo) is false and decision(hi) is true,
    // i.e. mad/2 lies in (lo, hi]. A graph with an edge has 1 <= mad <= n-1.
    let mut lo = Rational::ZERO;
    let mut hi = Rational::new(nn - 1, 2);
    // Distinct achievable densities are >= 1/n^2 apart; stop once the
    // density bracket is narrower than half that gap.
    let min_width = Rational::new(1, 4 * nn * nn);
    while hi - lo >= min_width {
        let mid = (lo + hi) * half;
        if mad_decision(g, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let two = Rational::from_integer(2);
    let mad = snap_to_bounded_denominator(lo * two, hi * two, nn)?;

    // Confirm the snapped value on both sides of the Lemma-2 boundary.
    let at_boundary = mad * half;
    if !mad_decision(g, &at_boundary) {
        return Err(Error::ContractViolation(format!(
            "snapped mad {mad} rejected at its own boundary"
        )));
    }
    let below = at_boundary - Rational::new(1, 4 * nn * nn);
    let net = FlowNetwork::build(g, &below);
    let flow = net.max_flow();
    if flow.value() == net.saturation_value() {
        return Err(Error::ContractViolation(format!(
            "snapped mad {mad} accepted strictly below its boundary"
        )));
    }

    // Any min-cut vertex side at this density has density within 1/(2n^2)
    // of mad, and densities that close must be equal.
    let witness = net.min_cut_vertex_side(&flow);
    if witness.is_empty() {
        return Err(Error::ContractViolation(
            "min cut below the mad boundary has an empty vertex side".into(),
        ));
    }
    let (sub, _) = g.induced_subgraph(&witness)?;
    let density = Rational::new(2 * sub.edge_count() as i128, sub.vertex_count() as i128);
    if density != mad {
        return Err(Error::ContractViolation(format!(
            "extracted witness has density {density}, expected {mad}"
        )));
    }
    Ok(MadResult {
        value: MadValue::finite(mad),
        witness,
    })
}

/// A nonempty vertex set of exactly maximum density. Errors on graphs
/// without edges, where no positive density exists.
pub fn densest_subgraph(g: &Graph) -> Result<VertexSet> {
    if g.vertex_count() == 0 || g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    Ok(mad_exact(g)?.witness)
}
