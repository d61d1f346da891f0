//! Corpus scans: run one certifier over many graphs and tally verdicts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{certify, Status, TheoremReport, TheoremSpec, Verdict};
use crate::enumerate::{connected_graphs_upto, sample_connected};
use crate::error::Result;
use crate::graph::Graph;
use crate::io::to_graph6;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Corpus {
    /// Every connected graph with `min_order ≤ n ≤ max_order`.
    Exhaustive { min_order: usize, max_order: usize },
    /// Seeded random connected graphs of one order.
    Sampled { order: usize, count: usize, seed: u64 },
    /// Explicit graphs, e.g. read from a graph6 stream.
    Explicit {
        #[serde(skip)]
        graphs: Vec<Graph>,
        count: usize,
    },
}

impl Corpus {
    pub fn explicit(graphs: Vec<Graph>) -> Self {
        let count = graphs.len();
        Corpus::Explicit { graphs, count }
    }

    fn materialize(&self) -> Result<Vec<Graph>> {
        Ok(match self {
            Corpus::Exhaustive { min_order, max_order } => {
                connected_graphs_upto(*min_order, *max_order)?.into_iter().cloned().collect()
            }
            Corpus::Sampled { order, count, seed } => sample_connected(*order, *count, *seed),
            Corpus::Explicit { graphs, .. } => graphs.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleEntry {
    /// Position in the corpus.
    pub index: usize,
    pub graph6: String,
    pub report: TheoremReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphError {
    pub index: usize,
    pub graph6: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub corpus: Corpus,
    pub spec: TheoremSpec,
    pub graphs: usize,
    pub verdicts: BTreeMap<Verdict, usize>,
    /// For applicable graphs, how often each condition label holds.
    pub condition_holds: BTreeMap<&'static str, usize>,
    /// For counterexamples, how often each condition label holds.
    pub counterexample_conditions: BTreeMap<&'static str, usize>,
    pub counterexamples: Vec<CounterexampleEntry>,
    pub boundary_cases: Vec<CounterexampleEntry>,
    pub errors: Vec<GraphError>,
}

impl SearchReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.verdicts.get(&v).copied().unwrap_or(0)
    }
}

/// Certifies every corpus graph in parallel; results are aggregated in
/// corpus order, so the report is deterministic.
pub fn search_counterexamples(corpus: Corpus, spec: TheoremSpec) -> Result<SearchReport> {
    spec.validate()?;
    let graphs = corpus.materialize()?;
    let outcomes: Vec<Result<TheoremReport>> = graphs.par_iter().map(|g| certify(g, spec)).collect();
    let mut report = SearchReport {
        corpus,
        spec,
        graphs: graphs.len(),
        verdicts: Verdict::ALL.iter().map(|&v| (v, 0)).collect(),
        condition_holds: BTreeMap::new(),
        counterexample_conditions: BTreeMap::new(),
        counterexamples: vec![],
        boundary_cases: vec![],
        errors: vec![],
    };
    for (index, (g, outcome)) in graphs.iter().zip(outcomes).enumerate() {
        let rep = match outcome {
            Ok(rep) => rep,
            Err(e) => {
                report.errors.push(GraphError { index, graph6: to_graph6(g), error: e.to_string() });
                continue;
            }
        };
        *report.verdicts.entry(rep.verdict).or_default() += 1;
        for c in &rep.conditions {
            let holds = c.status == Status::Holds;
            *report.condition_holds.entry(c.label).or_default() += holds as usize;
            if rep.verdict == Verdict::Counterexample {
                *report.counterexample_conditions.entry(c.label).or_default() += holds as usize;
            }
        }
        let entry = || CounterexampleEntry { index, graph6: to_graph6(g), report: rep.clone() };
        match rep.verdict {
            Verdict::Counterexample => report.counterexamples.push(entry()),
            Verdict::Boundary => report.boundary_cases.push(entry()),
            _ => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan_is_deterministic() {
        let spec = TheoremSpec::KFactor { k: 1 };
        let a = search_counterexamples(Corpus::Exhaustive { min_order: 2, max_order: 6 }, spec).unwrap();
        let b = search_counterexamples(Corpus::Exhaustive { min_order: 2, max_order: 6 }, spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs, 1 + 2 + 6 + 21 + 112);
        assert_eq!(a.verdicts.values().sum::<usize>() + a.errors.len(), a.graphs);
        let c = search_counterexamples(Corpus::Sampled { order: 6, count: 10, seed: 3 }, spec).unwrap();
        assert_eq!(c.graphs, 10);
    }
}
