//! Brute-force ground truth for mad on small graphs, and exhaustive
//! search for vertex bipartitions that bound mad on both sides.
//!
//! The subset scan only needs induced subgraphs: among all subgraphs on a
//! fixed vertex set the induced one has the most edges, hence the highest
//! density, which cuts the enumeration from `2^(n+m)` to `2^n` cases.

use crate::decompose;
use crate::graph::{Graph, VertexSet};
use crate::mad::mad_exact;
use crate::rational::{MadValue, Rational};
use crate::{Error, Result};

const BRUTE_FORCE_LIMIT: usize = 20;
const PARTITION_LIMIT: usize = 16;

/// Number of induced edges for every vertex subset, by bit-DP over masks.
fn subset_edge_counts(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let adj_mask: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut counts = vec![0u32; 1usize << n];
    for mask in 1..(1u64 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        counts[mask as usize] = counts[rest as usize] + (adj_mask[low] & rest).count_ones();
    }
    counts
}

/// Density encoded as `(2e, |W|)`; `(_, 0)` stands for the empty set's
/// `-inf`. Compares `a < b`.
fn density_lt(a: (u32, u32), b: (u32, u32)) -> bool {
    match (a.1, b.1) {
        (0, 0) => false,
        (0, _) => true,
        (_, 0) => false,
        _ => (a.0 as u64) * (b.1 as u64) < (b.0 as u64) * (a.1 as u64),
    }
}

/// `density < threshold` for a positive rational threshold.
fn density_below(d: (u32, u32), threshold: &Rational) -> bool {
    if d.1 == 0 {
        return true;
    }
    (d.0 as i128) * threshold.denominator() < threshold.numerator() * (d.1 as i128)
}

/// Exact mad by exhaustive enumeration of vertex subsets (`n <= 20`).
pub fn brute_force_mad(g: &Graph) -> Result<MadValue> {
    brute_force_mad_with_witness(g).map(|(value, _)| value)
}

/// As [`brute_force_mad`], also returning the first maximizing subset in
/// mask order.
pub fn brute_force_mad_with_witness(g: &Graph) -> Result<(MadValue, VertexSet)> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard(format!(
            "brute-force mad is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok((MadValue::NegInfinity, VertexSet::empty(0)));
    }
    let counts = subset_edge_counts(g);
    let mut best = (0u32, 0u32);
    let mut best_mask = 0u64;
    for mask in 1..(1u64 << n) {
        let d = (2 * counts[mask as usize], mask.count_ones());
        if density_lt(best, d) {
            best = d;
            best_mask = mask;
        }
    }
    let witness = VertexSet::from_indices(n, (0..n).filter(|&v| best_mask >> v & 1 == 1))?;
    Ok((
        MadValue::finite(Rational::new(best.0 as i128, best.1 as i128)),
        witness,
    ))
}

/// Result of the exhaustive bipartition search.
#[derive(Clone, Debug)]
pub enum ConjectureOutcome {
    /// First partition in mask order with `mad(G[A]) < c1` and
    /// `mad(G[B]) < c2`.
    Witness { a: VertexSet, b: VertexSet },
    /// No bipartition works although `mad(G) < c1 + c2`: a counterexample
    /// to the open partitionability question.
    Counterexample,
    /// The query lies outside the hypothesis `mad(G) < c1 + c2`.
    HypothesisViolated { mad: MadValue },
}

/// Searches every bipartition `V = A ⊎ B` for one with `mad(G[A]) < c1`
/// and `mad(G[B]) < c2` (`n <= 16`). Thresholds must be positive.
pub fn conjecture_search(g: &Graph, c1: &Rational, c2: &Rational) -> Result<ConjectureOutcome> {
    let n = g.vertex_count();
    if n > PARTITION_LIMIT {
        return Err(Error::SizeGuard(format!(
            "bipartition enumeration is limited to {PARTITION_LIMIT} vertices, got {n}"
        )));
    }
    if c1 <= &Rational::ZERO || c2 <= &Rational::ZERO {
        return Err(Error::ContractViolation(
            "conjecture thresholds must be positive".into(),
        ));
    }
    let mad = brute_force_mad(g)?;
    if mad >= MadValue::finite(*c1 + *c2) {
        return Ok(ConjectureOutcome::HypothesisViolated { mad });
    }

    let counts = subset_edge_counts(g);
    // best[mask] = max density over nonempty subsets of mask.
    let mut best: Vec<(u32, u32)> = (0..1u64 << n)
        .map(|mask| (2 * counts[mask as usize], mask.count_ones()))
        .collect();
    for bit in 0..n {
        for mask in 0..(1usize << n) {
            if mask >> bit & 1 == 1 {
                let without = best[mask ^ (1 << bit)];
                if density_lt(best[mask], without) {
                    best[mask] = without;
                }
            }
        }
    }

    let full = (1usize << n) - 1;
    for a_mask in 0..=full {
        let b_mask = full ^ a_mask;
        if density_below(best[a_mask], c1) && density_below(best[b_mask], c2) {
            let a = VertexSet::from_indices(n, (0..n).filter(|&v| a_mask >> v & 1 == 1))?;
            let b = VertexSet::from_indices(n, (0..n).filter(|&v| b_mask >> v & 1 == 1))?;
            return Ok(ConjectureOutcome::Witness { a, b });
        }
    }
    Ok(ConjectureOutcome::Counterexample)
}

/// A verified bipartition with `mad(G[A]) < c1` on the low side and a
/// `(k-1)`-degenerate other side, hence `mad(G[B]) < 2k - 2`.
#[derive(Clone, Debug)]
pub struct SplitBound {
    pub low_side: VertexSet,
    pub degenerate_side: VertexSet,
    pub low_mad: MadValue,
    pub degenerate_mad: MadValue,
}

/// For `k >= 2` and `mad(g) < c1 + k`, produces the partition guaranteed
/// by running the decomposition at level `k`; both mad bounds are
/// verified exactly before returning.
pub fn degenerate_split_bound(g: &Graph, c1: &Rational, k: usize) -> Result<SplitBound> {
    if k < 2 {
        return Err(Error::ContractViolation(format!(
            "degenerate split bound needs k >= 2, got {k}"
        )));
    }
    let mad = mad_exact(g)?.value;
    let bound = MadValue::finite(*c1 + Rational::from_integer(k as i128));
    if mad >= bound {
        return Err(Error::ContractViolation(format!(
            "hypothesis mad < c1 + k violated: mad = {mad}, c1 + k = {}",
            *c1 + Rational::from_integer(k as i128)
        )));
    }
    let d = decompose::decompose_by_k(g, k)?;
    let degenerate_side = d.set.clone();
    let low_side = degenerate_side.complement();
    let (low_graph, _) = g.induced_subgraph(&low_side)?;
    let (deg_graph, _) = g.induced_subgraph(&degenerate_side)?;
    let low_mad = mad_exact(&low_graph)?.value;
    let degenerate_mad = mad_exact(&deg_graph)?.value;
    if low_mad >= MadValue::finite(*c1) {
        return Err(Error::ContractViolation(format!(
            "low side reached mad {low_mad}, expected < {c1}"
        )));
    }
    let deg_bound = Rational::from_integer(2 * k as i128 - 2);
    if degenerate_mad >= MadValue::finite(deg_bound) {
        return Err(Error::ContractViolation(format!(
            "degenerate side reached mad {degenerate_mad}, expected < {deg_bound}"
        )));
    }
    Ok(SplitBound {
        low_side,
        degenerate_side,
        low_mad,
        degenerate_mad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: i128, den: i128) -> Rational {
        Rational::new(num, den)
    }

    #[test]
    fn brute_force_hand_checked() {
        // Triangle with a pendant edge: triangle gives 6/3, whole graph 8/4.
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!(brute_force_mad(&g).unwrap(), MadValue::finite(r(2, 1)));

        let diamond = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(brute_force_mad(&diamond).unwrap(), MadValue::finite(r(5, 2)));

        assert_eq!(
            brute_force_mad(&Graph::empty(1)).unwrap(),
            MadValue::finite(Rational::ZERO)
        );
        assert_eq!(brute_force_mad(&Graph::empty(0)).unwrap(), MadValue::NegInfinity);
        assert!(brute_force_mad(&Graph::empty(21)).is_err());
    }

    #[test]
    fn witness_achieves_the_maximum() {
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let (value, witness) = brute_force_mad_with_witness(&g).unwrap();
        let (sub, _) = g.induced_subgraph(&witness).unwrap();
        let density = r(2 * sub.edge_count() as i128, sub.vertex_count() as i128);
        assert_eq!(MadValue::finite(density), value);
    }

    #[test]
    fn conjecture_search_cases() {
        let k3 = Graph::complete(3);
        match conjecture_search(&k3, &Rational::ONE, &r(2, 1)).unwrap() {
            ConjectureOutcome::Witness { a, b } => {
                assert_eq!(a.iter().collect::<Vec<_>>(), vec![0]);
                assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 2]);
            }
            other => panic!("expected witness, got {other:?}"),
        }

        let k2 = Graph::complete(2);
        match conjecture_search(&k2, &Rational::ONE, &Rational::ONE).unwrap() {
            ConjectureOutcome::Witness { a, b } => {
                assert_eq!(a.iter().collect::<Vec<_>>(), vec![0]);
                assert_eq!(b.iter().collect::<Vec<_>>(), vec![1]);
            }
            other => panic!("expected witness, got {other:?}"),
        }

        match conjecture_search(&k3, &r(1, 2), &Rational::ONE).unwrap() {
            ConjectureOutcome::HypothesisViolated { mad } => {
                assert_eq!(mad, MadValue::finite(r(2, 1)));
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }

        assert!(conjecture_search(&Graph::empty(17), &Rational::ONE, &Rational::ONE).is_err());
        assert!(conjecture_search(&k3, &Rational::ZERO, &Rational::ONE).is_err());

        // Empty graph: the empty partition works.
        match conjecture_search(&Graph::empty(0), &Rational::ONE, &Rational::ONE).unwrap() {
            ConjectureOutcome::Witness { a, b } => {
                assert!(a.is_empty() && b.is_empty());
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn theorem_backed_thresholds_always_find_witnesses() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5150);
        for _ in 0..150 {
            let n = rng.random_range(1..=7usize);
            let mut edges = std::collections::BTreeSet::new();
            for _ in 0..rng.random_range(0..=2 * n) {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let mad = brute_force_mad(&g).unwrap();
            for k in [1i128, 2] {
                let c2 = Rational::from_integer(k);
                // Any c1 with mad < c1 + c2; take a value barely above.
                let c1 = match mad.as_rational() {
                    Some(m) if m > c2 => m - c2 + r(1, 3),
                    _ => r(1, 3),
                };
                match conjecture_search(&g, &c1, &c2).unwrap() {
                    ConjectureOutcome::Witness { .. } => {}
                    other => panic!(
                        "graph {:?} with c1={c1}, c2={c2} returned {other:?}",
                        g.edges()
                    ),
                }
            }
        }
    }

    #[test]
    fn degenerate_split_bound_cases() {
        // mad(K4) = 3 < 1 + 3; the degenerate side is 2-degenerate.
        let k4 = Graph::complete(4);
        let split = degenerate_split_bound(&k4, &Rational::ONE, 3).unwrap();
        assert!(split.low_mad < MadValue::finite(Rational::ONE));
        assert!(split.degenerate_mad < MadValue::finite(r(4, 1)));

        // mad(C5) = 2 < 1/2 + 2.
        let c5 = Graph::cycle(5);
        let split = degenerate_split_bound(&c5, &r(1, 2), 2).unwrap();
        assert!(split.low_mad < MadValue::finite(r(1, 2)));
        assert!(split.degenerate_mad < MadValue::finite(r(2, 1)));

        // A tree has mad < 2, so nothing is evicted: the degenerate side
        // is everything.
        let tree = Graph::path(6);
        let split = degenerate_split_bound(&tree, &Rational::ONE, 2).unwrap();
        assert_eq!(split.degenerate_side.len(), 6);
        assert!(split.low_side.is_empty());

        // Hypothesis violation is an error.
        assert!(degenerate_split_bound(&k4, &Rational::ONE, 2).is_err());
        assert!(degenerate_split_bound(&k4, &Rational::ONE, 1).is_err());
    }
}
