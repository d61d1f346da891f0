//! Edge-count sufficient conditions: `e(G)` above `C(n−1, 2) + c` together
//! with degree, order and parity side conditions forces the factor.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeLemma {
    /// Fractional `[a, b]`-factor: `e ≥ C(n−1,2) + (a+1)/2`, `δ ≥ a`,
    /// `n ≥ a+1`, `na` even when `a = b`.
    FractionalAb { a: usize, b: usize },
    /// Fractional `[a, b]`-deleted: `e ≥ C(n−1,2) + (a+2)/2`, `δ ≥ a+1`,
    /// `b ≥ max(a, 3)`, `n ≥ max(a+2, 7)`.
    AbDeleted { a: usize, b: usize },
    /// k-factor: `e > C(n−1,2) + (k+1)/2`, `δ ≥ k`, `n ≥ k+1`, `kn` even.
    KFactor { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeThreshold {
    pub lemma: EdgeLemma,
    pub order: usize,
    /// The threshold `C(n−1, 2) + c` as `numerator / denominator`.
    pub numerator: i64,
    pub denominator: i64,
    /// `e(G) > threshold` rather than `e(G) ≥ threshold`.
    pub strict: bool,
    /// Least integer edge count meeting the threshold.
    pub min_edges: usize,
    pub min_degree: usize,
    pub min_order: usize,
    /// The order-dependent parity condition holds for this `n`.
    pub parity_ok: bool,
}

impl EdgeThreshold {
    pub fn bound(&self) -> Ratio<i64> {
        Ratio::new(self.numerator, self.denominator)
    }

    /// Degree, order and parity side conditions on `g` (edge count aside).
    pub fn side_conditions_hold(&self, g: &Graph) -> bool {
        g.order() == self.order && self.order >= self.min_order && self.parity_ok && g.min_degree() >= self.min_degree
    }

    /// Every hypothesis of the lemma holds for `g`.
    pub fn hypotheses_hold(&self, g: &Graph) -> bool {
        self.side_conditions_hold(g) && g.edge_count() >= self.min_edges
    }
}

pub fn edge_threshold(lemma: EdgeLemma, n: usize) -> Result<EdgeThreshold> {
    let (extra, strict, min_degree, min_order, parity_ok) = match lemma {
        EdgeLemma::FractionalAb { a, b } => {
            if a == 0 || a > b {
                return Err(invalid(format!("need 1 ≤ a ≤ b, got a = {a}, b = {b}")));
            }
            (a + 1, false, a, a + 1, a != b || (n * a).is_multiple_of(2))
        }
        EdgeLemma::AbDeleted { a, b } => {
            if a == 0 || b < a.max(3) {
                return Err(invalid(format!("need a ≥ 1 and b ≥ max(a, 3), got a = {a}, b = {b}")));
            }
            (a + 2, false, a + 1, (a + 2).max(7), true)
        }
        EdgeLemma::KFactor { k } => {
            if k == 0 {
                return Err(invalid("k must be at least 1"));
            }
            (k + 1, true, k, k + 1, (k * n).is_multiple_of(2))
        }
    };
    if n < min_order {
        return Err(invalid(format!("order {n} is below the lemma's minimum {min_order}")));
    }
    let base = (n - 1) * n.saturating_sub(2) / 2;
    // threshold = base + extra/2 = (2·base + extra) / 2
    let twice = 2 * base + extra;
    let min_edges = if strict { twice / 2 + 1 } else { twice.div_ceil(2) };
    let bound = Ratio::new(twice as i64, 2);
    Ok(EdgeThreshold {
        lemma,
        order: n,
        numerator: *bound.numer(),
        denominator: *bound.denom(),
        strict,
        min_edges,
        min_degree,
        min_order,
        parity_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        let t = edge_threshold(EdgeLemma::KFactor { k: 1 }, 8).unwrap();
        assert_eq!((t.bound(), t.strict, t.min_edges), (Ratio::from_integer(22), true, 23));
        let t = edge_threshold(EdgeLemma::FractionalAb { a: 2, b: 2 }, 10).unwrap();
        assert_eq!((t.bound(), t.strict, t.min_edges), (Ratio::new(75, 2), false, 38));
        let t = edge_threshold(EdgeLemma::AbDeleted { a: 1, b: 3 }, 7).unwrap();
        assert_eq!((t.bound(), t.min_edges, t.min_degree), (Ratio::new(33, 2), 17, 2));
    }

    #[test]
    fn parameter_errors_and_side_conditions() {
        assert!(edge_threshold(EdgeLemma::KFactor { k: 0 }, 5).is_err());
        assert!(edge_threshold(EdgeLemma::AbDeleted { a: 1, b: 2 }, 9).is_err());
        assert!(edge_threshold(EdgeLemma::AbDeleted { a: 1, b: 3 }, 6).is_err());
        assert!(edge_threshold(EdgeLemma::FractionalAb { a: 3, b: 2 }, 6).is_err());
        let t = edge_threshold(EdgeLemma::FractionalAb { a: 1, b: 1 }, 7).unwrap();
        assert!(!t.parity_ok);
        let t = edge_threshold(EdgeLemma::KFactor { k: 2 }, 5).unwrap();
        assert!(t.hypotheses_hold(&Graph::complete(5)));
        let mut g = Graph::complete(5);
        for (u, v) in [(0, 1), (2, 3), (0, 2)] {
            g.remove_edge(u, v);
        }
        assert!(t.side_conditions_hold(&g));
        assert!(!t.hypotheses_hold(&g));
    }
}
