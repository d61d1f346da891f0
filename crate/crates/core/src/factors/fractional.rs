//! Fractional `[a, b]`-factors, decided exactly by linear feasibility and,
//! independently, by brute force over half-integral assignments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lp::{feasible_point, LinearSystem};
use super::{Certificate, EdgeWeight, FactorWitness, Violation};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Edge cap for [`half_integral_oracle`].
pub const HALF_INTEGRAL_EDGE_CAP: usize = 16;

fn check_ab(a: usize, b: usize) -> Result<()> {
    if a == 0 || a > b {
        return Err(invalid(format!("need 1 ≤ a ≤ b, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// Checks `0 ≤ h ≤ 1` and `a ≤ Σ_{e∋v} h(e) ≤ b` at every vertex.
fn validate(g: &Graph, weights: &[EdgeWeight], a: usize, b: usize) -> Result<()> {
    let mut sums = vec![BigRational::zero(); g.order()];
    for w in weights {
        if !g.has_edge(w.u, w.v) || w.weight < BigRational::zero() || w.weight > BigRational::one() {
            return Err(Error::OracleDisagreement(format!("bad weight on ({}, {})", w.u, w.v)));
        }
        sums[w.u] += &w.weight;
        sums[w.v] += &w.weight;
    }
    let lo = BigRational::from_integer(BigInt::from(a));
    let hi = BigRational::from_integer(BigInt::from(b));
    if let Some(v) = sums.iter().position(|s| *s < lo || *s > hi) {
        return Err(Error::OracleDisagreement(format!("vertex {v} has weight sum {} outside [{a}, {b}]", sums[v])));
    }
    Ok(())
}

/// Decides whether some `h: E → [0, 1]` has `a ≤ Σ_{e∋v} h(e) ≤ b` at every
/// vertex; returns an exact feasible `h` or infeasibility.
pub fn fractional_ab_factor(g: &Graph, a: usize, b: usize) -> Result<FactorWitness> {
    check_ab(a, b)?;
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    // columns: one per edge, then one surplus variable per vertex
    let mut rows = vec![vec![0i64; m + n]; n];
    for (k, &(u, v)) in edges.iter().enumerate() {
        rows[u][k] = 1;
        rows[v][k] = 1;
    }
    for (v, row) in rows.iter_mut().enumerate() {
        row[m + v] = -1;
    }
    let span = (b - a) as i64;
    let sys = LinearSystem {
        a: rows,
        b: vec![a as i64; n],
        upper: std::iter::repeat_n(Some(1), m).chain(std::iter::repeat_n(Some(span), n)).collect(),
    };
    match feasible_point(&sys)? {
        Some(x) => {
            let weights: Vec<EdgeWeight> =
                edges.iter().zip(x).map(|(&(u, v), weight)| EdgeWeight { u, v, weight }).collect();
            validate(g, &weights, a, b)?;
            Ok(FactorWitness::yes(Certificate::Fractional { weights }))
        }
        None => Ok(FactorWitness::no(Violation::Infeasible)),
    }
}

/// Brute force over `h ∈ {0, ½, 1}^E`, independent of the LP solver.
pub fn half_integral_oracle(g: &Graph, a: usize, b: usize) -> Result<FactorWitness> {
    check_ab(a, b)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > HALF_INTEGRAL_EDGE_CAP {
        return Err(Error::TooLarge { what: "half-integral edge count", got: edges.len(), cap: HALF_INTEGRAL_EDGE_CAP });
    }
    let n = g.order();
    // work in doubled units: h ∈ {0, 1, 2}
    let (lo, hi) = (2 * a, 2 * b);
    let mut last = vec![None; n];
    let mut remaining = vec![0usize; n];
    for (k, &(u, v)) in edges.iter().enumerate() {
        last[u] = Some(k);
        last[v] = Some(k);
        remaining[u] += 1;
        remaining[v] += 1;
    }
    if last.iter().any(Option::is_none) {
        return Ok(FactorWitness::no(Violation::Infeasible));
    }
    let mut sums = vec![0usize; n];
    let mut h = vec![0usize; edges.len()];

    fn dfs(
        k: usize,
        edges: &[(usize, usize)],
        last: &[Option<usize>],
        (lo, hi): (usize, usize),
        sums: &mut [usize],
        remaining: &mut [usize],
        h: &mut [usize],
    ) -> bool {
        if k == edges.len() {
            return true;
        }
        let (u, v) = edges[k];
        remaining[u] -= 1;
        remaining[v] -= 1;
        for w in 0..=2 {
            sums[u] += w;
            sums[v] += w;
            let fits = |x: usize| {
                let s = sums[x];
                s <= hi && s + 2 * remaining[x] >= lo && (last[x] != Some(k) || s >= lo)
            };
            if fits(u) && fits(v) {
                h[k] = w;
                if dfs(k + 1, edges, last, (lo, hi), sums, remaining, h) {
                    return true;
                }
            }
            sums[u] -= w;
            sums[v] -= w;
        }
        remaining[u] += 1;
        remaining[v] += 1;
        false
    }

    if !dfs(0, &edges, &last, (lo, hi), &mut sums, &mut remaining, &mut h) {
        return Ok(FactorWitness::no(Violation::Infeasible));
    }
    let two = BigInt::from(2);
    let weights: Vec<EdgeWeight> = edges
        .iter()
        .zip(&h)
        .map(|(&(u, v), &w)| EdgeWeight { u, v, weight: BigRational::new(BigInt::from(w), two.clone()) })
        .collect();
    validate(g, &weights, a, b)?;
    Ok(FactorWitness::yes(Certificate::Fractional { weights }))
}

/// `G − e` has a fractional `[a, b]`-factor for every edge `e`; a failure
/// names the first edge whose deletion is infeasible.
pub fn is_fractional_ab_deleted(g: &Graph, a: usize, b: usize) -> Result<FactorWitness> {
    check_ab(a, b)?;
    let mut checked = 0;
    for (u, v) in g.edges() {
        let mut h = g.clone();
        h.remove_edge(u, v);
        if !fractional_ab_factor(&h, a, b)?.exists {
            return Ok(FactorWitness::no(Violation::DeletedEdge { edge: (u, v) }));
        }
        checked += 1;
    }
    Ok(FactorWitness::yes(Certificate::AllDeletions { edges_checked: checked }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights(w: &FactorWitness) -> Vec<BigRational> {
        match &w.positive {
            Some(Certificate::Fractional { weights }) => weights.iter().map(|e| e.weight.clone()).collect(),
            other => panic!("expected fractional certificate, got {other:?}"),
        }
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lp_examples() {
        assert!(fractional_ab_factor(&Graph::path(4), 1, 2).unwrap().exists);
        let w = fractional_ab_factor(&Graph::star(3), 1, 1).unwrap();
        assert_eq!(w.negative, Some(Violation::Infeasible));
        let w = fractional_ab_factor(&Graph::cycle(5), 1, 1).unwrap();
        assert_eq!(weights(&w), vec![r(1, 2); 5]);
        assert!(fractional_ab_factor(&Graph::cycle(5), 0, 1).is_err());
        assert!(fractional_ab_factor(&Graph::cycle(5), 2, 1).is_err());
    }

    #[test]
    fn half_integral_examples() {
        let w = half_integral_oracle(&Graph::cycle(4), 1, 1).unwrap();
        assert!(w.exists);
        assert!(!half_integral_oracle(&Graph::path(3), 1, 1).unwrap().exists);
        let w = half_integral_oracle(&Graph::path(4), 1, 2).unwrap();
        assert_eq!(weights(&w), vec![r(1, 1), r(0, 1), r(1, 1)]);
        assert!(half_integral_oracle(&Graph::complete(7), 1, 1).is_err());
    }

    #[test]
    fn deleted_examples() {
        assert!(is_fractional_ab_deleted(&Graph::complete(5), 1, 2).unwrap().exists);
        let w = is_fractional_ab_deleted(&Graph::cycle(5), 1, 1).unwrap();
        assert_eq!(w.negative, Some(Violation::DeletedEdge { edge: (0, 1) }));
        assert!(is_fractional_ab_deleted(&Graph::complete(4), 1, 1).unwrap().exists);
    }
}
