//! Exact combinatorial oracles for every factor notion the certifiers need.
//!
//! Every positive or negative certificate is re-validated by an independent
//! recount before it is returned; a failed recount is reported as
//! [`Error::OracleDisagreement`](crate::Error::OracleDisagreement).

mod fractional;
mod id;
mod kfactor;
mod lemmas;
mod lp;
mod matching;
mod tutte;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::graph::Graph;

pub use fractional::{fractional_ab_factor, half_integral_oracle, is_fractional_ab_deleted, HALF_INTEGRAL_EDGE_CAP};
pub use id::{is_id_factor_critical, IdDecision};
pub use kfactor::has_k_factor;
pub use lemmas::{edge_threshold, EdgeLemma, EdgeThreshold};
pub use matching::{max_matching, maximum_matching};
pub use tutte::{fractional_pm_violator, hall_check, tutte_violator};

/// Cap on the vertex count for subset searches.
pub const SUBSET_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub components: usize,
    pub odd_components: usize,
    pub isolated: usize,
}

pub fn component_stats(g: &Graph) -> ComponentStats {
    let (label, count) = g.components();
    let mut sizes = vec![0usize; count];
    for &c in &label {
        sizes[c] += 1;
    }
    ComponentStats {
        components: count,
        odd_components: sizes.iter().filter(|&&s| s % 2 == 1).count(),
        isolated: sizes.iter().filter(|&&s| s == 1).count(),
    }
}

/// Exact rational edge weight, serialised as `{u, v, num, den}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeight {
    pub u: usize,
    pub v: usize,
    pub weight: BigRational,
}

impl Serialize for EdgeWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EdgeWeight", 4)?;
        st.serialize_field("u", &self.u)?;
        st.serialize_field("v", &self.v)?;
        st.serialize_field("num", &BigNum(self.weight.numer()))?;
        st.serialize_field("den", &BigNum(self.weight.denom()))?;
        st.end()
    }
}

/// JSON number when it fits an `i64`, decimal string otherwise.
struct BigNum<'a>(&'a BigInt);

impl Serialize for BigNum<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A maximum matching (perfect when the verdict is positive).
    Matching { edges: Vec<(usize, usize)> },
    Fractional { weights: Vec<EdgeWeight> },
    Factor { edges: Vec<(usize, usize)> },
    /// Every edge deletion admits a fractional factor.
    AllDeletions { edges_checked: usize },
    /// Every parity-matching independent set was removed and the rest matched.
    IndependentSets { checked: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `o(G − S) > |S|`.
    Tutte { set: Vec<usize>, odd_components: usize },
    /// `i(G − S) > |S|`.
    Isolated { set: Vec<usize>, isolated: usize },
    /// `|N(S)| < |S|` for `S ⊆ A`.
    Hall { set: Vec<usize>, neighbourhood: Vec<usize> },
    /// Hall's condition holds but the sides differ in size.
    UnbalancedSides { left: usize, right: usize },
    /// The fractional constraint system has no solution.
    Infeasible,
    /// `G − e` has no fractional factor.
    DeletedEdge { edge: (usize, usize) },
    /// A vertex has degree below the required factor degree.
    LowDegree { vertex: usize, degree: usize },
    /// `k·n` is odd.
    OddDegreeSum,
    /// The degree-constrained gadget has no perfect matching.
    NoGadgetMatching,
    /// `o(G − I − S) > |S|` with `I` independent of matching parity.
    IndependentTutte { independent: Vec<usize>, set: Vec<usize>, odd_components: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorWitness {
    pub exists: bool,
    pub positive: Option<Certificate>,
    pub negative: Option<Violation>,
}

impl FactorWitness {
    pub(crate) fn yes(c: Certificate) -> Self {
        FactorWitness { exists: true, positive: Some(c), negative: None }
    }

    pub(crate) fn no(v: Violation) -> Self {
        FactorWitness { exists: false, positive: None, negative: Some(v) }
    }
}

/// Bit-level helpers shared by the exhaustive searches (orders up to 64).
pub(crate) mod bits {
    /// Component statistics of the subgraph induced on `alive`.
    pub fn component_counts(adj: &[u64], alive: u64) -> (usize, usize, usize) {
        let mut rest = alive;
        let (mut comps, mut odd, mut iso) = (0, 0, 0);
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & alive & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            comps += 1;
            let size = comp.count_ones();
            if size % 2 == 1 {
                odd += 1;
            }
            if size == 1 {
                iso += 1;
            }
        }
        (comps, odd, iso)
    }

    pub fn members(mask: u64) -> Vec<usize> {
        (0..64).filter(|&v| mask >> v & 1 == 1).collect()
    }

    /// Visits subsets of `items` by increasing size, each size in
    /// lexicographic order of the chosen positions, up to `max_size`.
    /// Stops early when `f` returns `Some`.
    pub fn find_subset<T>(items: &[usize], max_size: usize, mut f: impl FnMut(u64, usize) -> Option<T>) -> Option<T> {
        let m = items.len();
        for k in 0..=max_size.min(m) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let mask = idx.iter().fold(0u64, |acc, &i| acc | (1 << items[i]));
                if let Some(t) = f(mask, k) {
                    return Some(t);
                }
                let mut i = k;
                while i > 0 && idx[i - 1] == m - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        None
    }
}
