//! ID-factor-criticality, decided twice: from the definition (every
//! independent set of matching parity leaves a graph with a perfect
//! matching) and from the Tutte-type criterion `o(G − I − S) ≤ |S|`.

use serde::Serialize;

use super::bits::{component_counts, find_subset, members};
use super::matching::has_perfect_matching;
use super::{component_stats, Certificate, FactorWitness, Violation, SUBSET_CAP};
use crate::error::{Error, Result};
use crate::graph::{delete, Graph};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdDecision {
    pub critical: bool,
    /// Independent sets of matching parity visited by the definition form.
    pub independent_sets: usize,
    /// Least independent `I` (size, then lexicographic) with no perfect
    /// matching in `G − I`.
    pub definition_witness: Option<Vec<usize>>,
    /// Perfect-matching certificate or the least `(I, S)` violator.
    pub witness: FactorWitness,
}

/// Calls `f` on every independent set of size `k`, lexicographically, until
/// it returns `Some`.
fn independent_sets_of_size<T>(adj: &[u64], k: usize, f: &mut impl FnMut(u64) -> Option<T>) -> Option<T> {
    fn go<T>(adj: &[u64], from: usize, left: usize, chosen: u64, blocked: u64, f: &mut impl FnMut(u64) -> Option<T>) -> Option<T> {
        if left == 0 {
            return f(chosen);
        }
        let n = adj.len();
        for v in from..n + 1 - left {
            if blocked >> v & 1 == 0 {
                if let Some(t) = go(adj, v + 1, left - 1, chosen | 1 << v, blocked | adj[v], f) {
                    return Some(t);
                }
            }
        }
        None
    }
    if k > adj.len() {
        return None;
    }
    go(adj, 0, k, 0, 0, f)
}

/// Least independent `I` of matching parity, in size-then-lexicographic
/// order, for which `f` returns `Some`.
fn first_independent<T>(adj: &[u64], mut f: impl FnMut(u64) -> Option<T>) -> Option<T> {
    let n = adj.len();
    (n % 2..=n).step_by(2).find_map(|k| independent_sets_of_size(adj, k, &mut f))
}

pub fn is_id_factor_critical(g: &Graph) -> Result<IdDecision> {
    let n = g.order();
    if n > SUBSET_CAP {
        return Err(Error::TooLarge { what: "ID-factor-critical order", got: n, cap: SUBSET_CAP });
    }
    let adj = g.bitsets();
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    let mut visited = 0;
    let definition = first_independent(&adj, |i| {
        visited += 1;
        let rest = members(all & !i);
        (!has_perfect_matching(&g.induced(&rest))).then_some(i)
    });

    let lemma = first_independent(&adj, |i| {
        let alive = all & !i;
        let pool = members(alive);
        // o(G − I − S) ≤ n − |I| − |S| bounds the useful |S|
        let max_s = pool.len().saturating_sub(1) / 2;
        find_subset(&pool, max_s, |s, k| {
            let (_, odd, _) = component_counts(&adj, alive & !s);
            (odd > k).then_some((i, s, odd))
        })
    });

    match (definition, lemma) {
        (None, None) => Ok(IdDecision {
            critical: true,
            independent_sets: visited,
            definition_witness: None,
            witness: FactorWitness::yes(Certificate::IndependentSets { checked: visited }),
        }),
        (Some(def), Some((i, s, odd))) => {
            let independent = members(i);
            let set = members(s);
            let removed: Vec<usize> = members(i | s);
            let recount = component_stats(&delete(g, &removed, &[])?.graph).odd_components;
            if recount != odd || recount <= set.len() {
                return Err(Error::OracleDisagreement(format!(
                    "ID violator I = {independent:?}, S = {set:?} recounts to {recount}"
                )));
            }
            Ok(IdDecision {
                critical: false,
                independent_sets: visited,
                definition_witness: Some(members(def)),
                witness: FactorWitness::no(Violation::IndependentTutte { independent, set, odd_components: odd }),
            })
        }
        (def, lemma) => Err(Error::OracleDisagreement(format!(
            "definition form says {}, criterion form says {}",
            def.is_none(),
            lemma.is_none()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_extremal_gr;

    #[test]
    fn examples() {
        assert!(is_id_factor_critical(&Graph::complete(5)).unwrap().critical);
        // removing an antipodal pair of C_4 leaves two non-adjacent vertices
        let c4 = is_id_factor_critical(&Graph::cycle(4)).unwrap();
        assert!(!c4.critical);
        assert_eq!(c4.definition_witness, Some(vec![0, 2]));
        assert_eq!(
            c4.witness.negative,
            Some(Violation::IndependentTutte { independent: vec![0, 2], set: vec![], odd_components: 2 })
        );
        let k4 = is_id_factor_critical(&Graph::complete(4)).unwrap();
        assert!(k4.critical);
        assert_eq!(k4.independent_sets, 1);

        let (g, _) = build_extremal_gr(11, 1).unwrap();
        let d = is_id_factor_critical(&g).unwrap();
        assert!(!d.critical);
        assert_eq!(
            d.witness.negative,
            Some(Violation::IndependentTutte { independent: vec![0], set: vec![1], odd_components: 3 })
        );
    }

    #[test]
    fn small_cases() {
        // a single vertex: I = {v} leaves the empty graph
        assert!(is_id_factor_critical(&Graph::empty(1)).unwrap().critical);
        assert!(!is_id_factor_critical(&Graph::path(3)).unwrap().critical);
        assert!(!is_id_factor_critical(&Graph::star(3)).unwrap().critical);
    }
}
