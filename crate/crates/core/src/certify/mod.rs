//! Theorem certifiers: evaluate each spectral hypothesis, decide the
//! promised property with an exact oracle, and classify the outcome.
//!
//! Thresholds are exact rationals where they are closed-form; only the
//! spectral radii carry floating error. A spectral value within
//! [`BOUNDARY_TOL`] of its threshold is reported as a boundary case rather
//! than as holding or failing.

mod replay;
mod search;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::factors::{
    fractional_ab_factor, has_k_factor, is_fractional_ab_deleted, is_id_factor_critical, FactorWitness,
};
use crate::graph::{build_extremal_gr, complement, Graph};
use crate::spectra::{distance_spectral_radius, dq_spectral_radius};

pub use replay::{compare_lemma23, replay_comparison, Lemma23Report, ReplayReport};
pub use search::{search_counterexamples, Corpus, CounterexampleEntry, SearchReport};

pub const BOUNDARY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Distance spectral radius at most that of `G^(r)` forces
    /// ID-factor-criticality unless `G ≅ G^(r)`.
    IdFactorCritical,
    FractionalAb,
    AbDeleted,
    KFactor,
}

/// A theorem together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum TheoremSpec {
    IdFactorCritical { r: usize },
    FractionalAb { a: usize, b: usize },
    AbDeleted { a: usize, b: usize },
    KFactor { k: usize },
}

impl TheoremSpec {
    pub fn theorem(&self) -> Theorem {
        match self {
            TheoremSpec::IdFactorCritical { .. } => Theorem::IdFactorCritical,
            TheoremSpec::FractionalAb { .. } => Theorem::FractionalAb,
            TheoremSpec::AbDeleted { .. } => Theorem::AbDeleted,
            TheoremSpec::KFactor { .. } => Theorem::KFactor,
        }
    }

    /// Rejects parameter combinations outside the theorem's statement.
    pub fn validate(&self) -> Result<()> {
        match *self {
            TheoremSpec::IdFactorCritical { r: 0 } => Err(invalid("r must be at least 1")),
            TheoremSpec::FractionalAb { a, b } if a == 0 || a > b => {
                Err(invalid(format!("need 1 ≤ a ≤ b, got a = {a}, b = {b}")))
            }
            TheoremSpec::AbDeleted { a, b } if a == 0 || b < a.max(3) => {
                Err(invalid(format!("need a ≥ 1 and b ≥ max(a, 3), got a = {a}, b = {b}")))
            }
            TheoremSpec::KFactor { k: 0 } => Err(invalid("k must be at least 1")),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Boundary,
    /// The complement is disconnected, so its distance matrix is undefined.
    NotEvaluable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Holds,
    Fails,
    /// Fails, but the graph is the stated exception.
    Exception,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Vacuous,
    ExtremalException,
    Counterexample,
    Boundary,
    /// A precondition on the graph (order, minimum degree, parity) fails.
    Inapplicable,
}

impl Verdict {
    pub const ALL: [Verdict; 6] = [
        Verdict::Consistent,
        Verdict::Vacuous,
        Verdict::ExtremalException,
        Verdict::Counterexample,
        Verdict::Boundary,
        Verdict::Inapplicable,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionEval {
    /// `i` to `iv`, or `spectral` for the single-condition theorem.
    pub label: &'static str,
    pub quantity: &'static str,
    pub value: Option<f64>,
    pub threshold: f64,
    /// Exact threshold as `[numerator, denominator]` when closed-form.
    pub exact_threshold: Option<[i64; 2]>,
    pub strict: bool,
    /// `threshold − value`; positive means the condition holds.
    pub margin: Option<f64>,
    pub status: Status,
}

fn evaluate(
    label: &'static str,
    quantity: &'static str,
    value: Option<f64>,
    threshold: f64,
    exact: Option<Ratio<i64>>,
    strict: bool,
) -> ConditionEval {
    let margin = value.map(|v| threshold - v);
    let status = match margin {
        None => Status::NotEvaluable,
        Some(m) if m.abs() <= BOUNDARY_TOL => Status::Boundary,
        Some(m) if m > 0.0 => Status::Holds,
        Some(_) => Status::Fails,
    };
    ConditionEval {
        label,
        quantity,
        value,
        threshold,
        exact_threshold: exact.map(|r| [*r.numer(), *r.denom()]),
        strict,
        margin,
        status,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Precondition {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub spec: TheoremSpec,
    pub order: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub preconditions: Vec<Precondition>,
    pub conditions: Vec<ConditionEval>,
    /// Aggregate over the conditions: holds if any holds, else boundary if
    /// any is a boundary case, else fails. `None` when inapplicable.
    pub hypothesis: Option<Status>,
    pub conclusion: Option<Conclusion>,
    /// The graph is the theorem's stated exception.
    pub exception: bool,
    pub verdict: Verdict,
    pub witness: Option<FactorWitness>,
    pub boundary_tolerance: f64,
}

fn aggregate(conditions: &[ConditionEval]) -> Status {
    if conditions.iter().any(|c| c.status == Status::Holds) {
        Status::Holds
    } else if conditions.iter().any(|c| c.status == Status::Boundary) {
        Status::Boundary
    } else {
        Status::Fails
    }
}

fn classify(hypothesis: Status, holds: bool, exception: bool) -> (Conclusion, Verdict) {
    if holds {
        return (Conclusion::Holds, if hypothesis == Status::Fails { Verdict::Vacuous } else { Verdict::Consistent });
    }
    if exception {
        return (Conclusion::Exception, Verdict::ExtremalException);
    }
    let verdict = match hypothesis {
        Status::Holds => Verdict::Counterexample,
        Status::Boundary => Verdict::Boundary,
        _ => Verdict::Vacuous,
    };
    (Conclusion::Fails, verdict)
}

struct Draft {
    spec: TheoremSpec,
    g_order: usize,
    edge_count: usize,
    min_degree: usize,
    preconditions: Vec<Precondition>,
}

impl Draft {
    fn new(spec: TheoremSpec, g: &Graph) -> Result<Self> {
        spec.validate()?;
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        Ok(Draft { spec, g_order: g.order(), edge_count: g.edge_count(), min_degree: g.min_degree(), preconditions: vec![] })
    }

    fn require(&mut self, name: impl Into<String>, holds: bool) {
        self.preconditions.push(Precondition { name: name.into(), holds });
    }

    fn applicable(&self) -> bool {
        self.preconditions.iter().all(|p| p.holds)
    }

    fn finish(
        self,
        conditions: Vec<ConditionEval>,
        outcome: Option<(bool, bool, FactorWitness)>,
    ) -> TheoremReport {
        let (hypothesis, conclusion, exception, verdict, witness) = match outcome {
            None => (None, None, false, Verdict::Inapplicable, None),
            Some((holds, exception, witness)) => {
                let hypothesis = aggregate(&conditions);
                let (conclusion, verdict) = classify(hypothesis, holds, exception);
                (Some(hypothesis), Some(conclusion), exception, verdict, Some(witness))
            }
        };
        TheoremReport {
            spec: self.spec,
            order: self.g_order,
            edge_count: self.edge_count,
            min_degree: self.min_degree,
            preconditions: self.preconditions,
            conditions,
            hypothesis,
            conclusion,
            exception,
            verdict,
            witness,
            boundary_tolerance: BOUNDARY_TOL,
        }
    }
}

/// Block classes `[I_r, K_r, K_{n−3r−1}, I_{r+1}]` of a graph isomorphic to
/// `G^(r)`, or `None`.
pub fn extremal_classes(g: &Graph, r: usize) -> Result<Option<[Vec<usize>; 4]>> {
    let n = g.order();
    if r == 0 || n < 7 * r + 4 {
        return Err(invalid(format!("recognition needs r ≥ 1 and n ≥ 7r + 4, got n = {n}, r = {r}")));
    }
    let by_degree = |d: usize| (0..n).filter(|&v| g.degree(v) == d).collect::<Vec<_>>();
    let low = by_degree(2 * r);
    let big = by_degree(n - r - 2);
    let mut top: Vec<usize> = (0..n).filter(|&v| g.degree(v) == n - 1).collect();
    let mut mid = by_degree(n - r);
    if r == 1 {
        // n − r = n − 1: the I_1 and K_1 vertices are adjacent twins
        if top.len() != 2 {
            return Ok(None);
        }
        mid = vec![top.remove(0)];
    }
    if mid.len() != r || top.len() != r || big.len() != n - 3 * r - 1 || low.len() != r + 1 {
        return Ok(None);
    }
    let classes = [mid, top, big, low];
    // required adjacency between and within classes
    const JOINED: [[bool; 4]; 4] =
        [[false, true, true, true], [true, true, true, true], [true, true, true, false], [true, true, false, false]];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            for &u in ci {
                for &v in cj {
                    if u != v && g.has_edge(u, v) != JOINED[i][j] {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(classes))
}

/// `G ≅ I_r ∨ K_r ∨ (K_{n−3r−1} + I_{r+1})`, decided structurally.
pub fn recognize_extremal(g: &Graph, r: usize) -> Result<bool> {
    Ok(extremal_classes(g, r)?.is_some())
}

/// `λ₁(D(G^(r)))` on `n` vertices.
pub fn extremal_radius(n: usize, r: usize) -> Result<f64> {
    let (gr, _) = build_extremal_gr(n, r)?;
    Ok(distance_spectral_radius(&gr)?.value)
}

pub fn certify_id_theorem(g: &Graph, r: usize) -> Result<TheoremReport> {
    let n = g.order();
    let mut draft = Draft::new(TheoremSpec::IdFactorCritical { r }, g)?;
    draft.require(format!("n ≥ 7r + 4 = {}", 7 * r + 4), n >= 7 * r + 4);
    if !draft.applicable() {
        return Ok(draft.finish(vec![], None));
    }
    let star = extremal_radius(n, r)?;
    let lambda = distance_spectral_radius(g)?.value;
    let conditions = vec![evaluate("spectral", "lambda1(D(G)) <= lambda1(D(G^(r)))", Some(lambda), star, None, false)];
    let decision = is_id_factor_critical(g)?;
    let exception = recognize_extremal(g, r)?;
    Ok(draft.finish(conditions, Some((decision.critical, exception, decision.witness))))
}

/// `λ₁` and `μ₁` of the complement, `None` when it is disconnected.
fn complement_radii(g: &Graph) -> Result<Option<(f64, f64)>> {
    let c = complement(g);
    if c.order() < 2 || !c.is_connected() {
        return Ok(None);
    }
    Ok(Some((distance_spectral_radius(&c)?.value, dq_spectral_radius(&c)?.value)))
}

/// The four conditions shared by the fractional and k-factor theorems:
/// `λ₁(D(G)) ≤ n+1−p/n`, `μ₁(D^Q(G)) ≤ 2n+2−2p/n`,
/// `λ₁(D(Ḡ)) ≤ 2n−4+p/n`, `μ₁(D^Q(Ḡ)) ≤ 4n−8+2p/n`.
fn four_conditions(g: &Graph, p: i64, strict: bool) -> Result<Vec<ConditionEval>> {
    let n = g.order() as i64;
    let lambda = distance_spectral_radius(g)?.value;
    let mu = dq_spectral_radius(g)?.value;
    let comp = complement_radii(g)?;
    let t = [
        Ratio::new(n * n + n - p, n),
        Ratio::new(2 * n * n + 2 * n - 2 * p, n),
        Ratio::new(2 * n * n - 4 * n + p, n),
        Ratio::new(4 * n * n - 8 * n + 2 * p, n),
    ];
    let f = |r: Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
    Ok(vec![
        evaluate("i", "lambda1(D(G))", Some(lambda), f(t[0]), Some(t[0]), strict),
        evaluate("ii", "mu1(DQ(G))", Some(mu), f(t[1]), Some(t[1]), strict),
        evaluate("iii", "lambda1(D(complement))", comp.map(|c| c.0), f(t[2]), Some(t[2]), strict),
        evaluate("iv", "mu1(DQ(complement))", comp.map(|c| c.1), f(t[3]), Some(t[3]), strict),
    ])
}

pub fn certify_fractional_ab(g: &Graph, a: usize, b: usize) -> Result<TheoremReport> {
    let n = g.order();
    let mut draft = Draft::new(TheoremSpec::FractionalAb { a, b }, g)?;
    draft.require(format!("n ≥ a + 1 = {}", a + 1), n > a);
    draft.require(format!("δ ≥ a = {a}"), g.min_degree() >= a);
    if a == b {
        draft.require("na even when a = b", (n * a).is_multiple_of(2));
    }
    if !draft.applicable() {
        return Ok(draft.finish(vec![], None));
    }
    let conditions = four_conditions(g, a as i64 + 3, false)?;
    let w = fractional_ab_factor(g, a, b)?;
    Ok(draft.finish(conditions, Some((w.exists, false, w))))
}

pub fn certify_deleted(g: &Graph, a: usize, b: usize) -> Result<TheoremReport> {
    let n = g.order();
    let mut draft = Draft::new(TheoremSpec::AbDeleted { a, b }, g)?;
    let min_n = (a + 2).max(7);
    draft.require(format!("n ≥ max(a + 2, 7) = {min_n}"), n >= min_n);
    draft.require(format!("δ ≥ a + 1 = {}", a + 1), g.min_degree() > a);
    if !draft.applicable() {
        return Ok(draft.finish(vec![], None));
    }
    let conditions = four_conditions(g, a as i64 + 4, false)?;
    let w = is_fractional_ab_deleted(g, a, b)?;
    Ok(draft.finish(conditions, Some((w.exists, false, w))))
}

pub fn certify_k_factor(g: &Graph, k: usize) -> Result<TheoremReport> {
    let n = g.order();
    let mut draft = Draft::new(TheoremSpec::KFactor { k }, g)?;
    draft.require(format!("n ≥ k + 1 = {}", k + 1), n > k);
    draft.require("kn even", (k * n).is_multiple_of(2));
    draft.require(format!("δ ≥ k = {k}"), g.min_degree() >= k);
    if !draft.applicable() {
        return Ok(draft.finish(vec![], None));
    }
    let conditions = four_conditions(g, k as i64 + 3, true)?;
    let w = has_k_factor(g, k)?;
    Ok(draft.finish(conditions, Some((w.exists, false, w))))
}

/// Dispatches to the certifier selected by `spec`.
pub fn certify(g: &Graph, spec: TheoremSpec) -> Result<TheoremReport> {
    match spec {
        TheoremSpec::IdFactorCritical { r } => certify_id_theorem(g, r),
        TheoremSpec::FractionalAb { a, b } => certify_fractional_ab(g, a, b),
        TheoremSpec::AbDeleted { a, b } => certify_deleted(g, a, b),
        TheoremSpec::KFactor { k } => certify_k_factor(g, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_gs;

    #[test]
    fn recognizes_extremal_graphs() {
        let (g, _) = build_extremal_gr(11, 1).unwrap();
        assert!(recognize_extremal(&g, 1).unwrap());
        assert!(recognize_extremal(&g.permuted(&[10, 3, 4, 5, 6, 7, 8, 9, 0, 1, 2]), 1).unwrap());
        assert!(!recognize_extremal(&Graph::complete(11), 1).unwrap());
        let mut h = g.clone();
        h.add_edge(9, 10);
        assert!(!recognize_extremal(&h, 1).unwrap());
        let (g2, _) = build_extremal_gr(18, 2).unwrap();
        assert!(recognize_extremal(&g2, 2).unwrap());
        assert!(!recognize_extremal(&g2, 1).unwrap());
        assert!(recognize_extremal(&g, 2).is_err());
    }

    #[test]
    fn id_theorem_examples() {
        let (g, _) = build_extremal_gr(11, 1).unwrap();
        let rep = certify_id_theorem(&g, 1).unwrap();
        assert_eq!(rep.hypothesis, Some(Status::Boundary));
        assert!(rep.conditions[0].margin.unwrap().abs() <= BOUNDARY_TOL);
        assert_eq!(rep.conclusion, Some(Conclusion::Exception));
        assert_eq!(rep.verdict, Verdict::ExtremalException);

        let rep = certify_id_theorem(&Graph::complete(11), 1).unwrap();
        assert_eq!((rep.hypothesis, rep.verdict), (Some(Status::Holds), Verdict::Consistent));

        let (gs, _) = build_gs(11, 1, 4).unwrap();
        let rep = certify_id_theorem(&gs, 1).unwrap();
        assert_eq!((rep.hypothesis, rep.verdict), (Some(Status::Fails), Verdict::Vacuous));

        assert_eq!(certify_id_theorem(&Graph::complete(10), 1).unwrap().verdict, Verdict::Inapplicable);
        assert!(certify_id_theorem(&Graph::empty(11), 1).is_err());
    }

    #[test]
    fn pendant_clique_breaks_the_id_theorem() {
        // K_{n−1} with a pendant vertex lies below the threshold yet is not
        // ID-factor-critical
        let mut g = crate::graph::disjoint_union(&Graph::complete(10), &Graph::empty(1));
        g.add_edge(0, 10);
        let rep = certify_id_theorem(&g, 1).unwrap();
        assert_eq!(rep.hypothesis, Some(Status::Holds));
        assert_eq!(rep.verdict, Verdict::Counterexample);
    }

    #[test]
    fn fractional_examples() {
        let rep = certify_fractional_ab(&Graph::complete(12), 2, 3).unwrap();
        assert_eq!(rep.conditions[0].status, Status::Holds);
        assert_eq!(rep.conditions[0].exact_threshold, Some([151, 12]));
        assert_eq!(rep.conditions[2].status, Status::NotEvaluable);
        assert_eq!(rep.verdict, Verdict::Consistent);

        let rep = certify_fractional_ab(&Graph::path(5), 1, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Inapplicable);
        assert!(!rep.preconditions.iter().all(|p| p.holds));

        // C_6's own conditions fail but its complement, the prism, is close
        // to complete and meets condition (iii)
        let rep = certify_fractional_ab(&Graph::cycle(6), 2, 2).unwrap();
        assert_eq!(rep.conditions[0].status, Status::Fails);
        assert!((rep.conditions[0].value.unwrap() - 9.0).abs() < 1e-9);
        assert_eq!(rep.conditions[2].status, Status::Holds);
        assert_eq!(rep.verdict, Verdict::Consistent);
        assert!(certify_fractional_ab(&Graph::cycle(6), 3, 2).is_err());
    }

    #[test]
    fn deleted_and_k_factor_examples() {
        let rep = certify_deleted(&Graph::complete(9), 1, 3).unwrap();
        assert_eq!((rep.conditions[0].status, rep.verdict), (Status::Holds, Verdict::Consistent));
        let rep = certify_deleted(&Graph::cycle(7), 1, 3).unwrap();
        assert_eq!(rep.conditions[0].status, Status::Fails);
        assert!((rep.conditions[0].value.unwrap() - 12.0).abs() < 1e-9);
        let rep = certify_deleted(&Graph::cycle(8), 2, 3).unwrap();
        assert_eq!(rep.verdict, Verdict::Inapplicable);

        let rep = certify_k_factor(&Graph::complete(8), 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Consistent);
        let rep = certify_k_factor(&Graph::star(3), 1).unwrap();
        assert_eq!(rep.conditions[0].status, Status::Fails);
        assert_eq!(rep.conclusion, Some(Conclusion::Fails));
        let rep = certify_k_factor(&Graph::cycle(4), 2).unwrap();
        assert_eq!(rep.conditions[0].status, Status::Fails);
        assert_eq!(rep.conclusion, Some(Conclusion::Holds));
        assert_eq!(rep.verdict, Verdict::Vacuous);
    }
}
