//! k-factors by reduction to perfect matching.
//!
//! Each vertex `v` becomes `d(v)` ports, one per incident edge, plus
//! `d(v) − k` cores joined to every port of `v`; the two ports of an edge are
//! joined. Cores absorb exactly `d(v) − k` ports, so a perfect matching uses
//! exactly `k` port-to-port edges at every vertex.

use super::matching::maximum_matching;
use super::{Certificate, FactorWitness, Violation};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

pub fn has_k_factor(g: &Graph, k: usize) -> Result<FactorWitness> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let n = g.order();
    if k * n % 2 == 1 {
        return Ok(FactorWitness::no(Violation::OddDegreeSum));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) < k) {
        return Ok(FactorWitness::no(Violation::LowDegree { vertex: v, degree: g.degree(v) }));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // port of (vertex, position in its neighbour list)
    let mut port_base = vec![0; n + 1];
    for v in 0..n {
        port_base[v + 1] = port_base[v] + g.degree(v);
    }
    let ports = port_base[n];
    let port = |v: usize, u: usize| port_base[v] + g.neighbors(v).binary_search(&u).expect("edge endpoint");
    let cores: usize = (0..n).map(|v| g.degree(v) - k).sum();
    let mut gadget = Graph::empty(ports + cores);
    let mut next_core = ports;
    for v in 0..n {
        for _ in 0..g.degree(v) - k {
            for p in port_base[v]..port_base[v + 1] {
                gadget.add_edge(next_core, p);
            }
            next_core += 1;
        }
    }
    for &(u, v) in &edges {
        gadget.add_edge(port(u, v), port(v, u));
    }
    let matching = maximum_matching(&gadget);
    if 2 * matching.len() != gadget.order() {
        return Ok(FactorWitness::no(Violation::NoGadgetMatching));
    }
    let factor: Vec<(usize, usize)> =
        edges.iter().copied().filter(|&(u, v)| matching.contains(&(port(u, v), port(v, u)))).collect();
    let mut deg = vec![0; n];
    for &(u, v) in &factor {
        deg[u] += 1;
        deg[v] += 1;
    }
    if deg.iter().any(|&d| d != k) {
        return Err(Error::OracleDisagreement(format!("gadget matching gives degrees {deg:?}, not {k}")));
    }
    Ok(FactorWitness::yes(Certificate::Factor { edges: factor }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    #[test]
    fn examples() {
        let w = has_k_factor(&Graph::cycle(6), 2).unwrap();
        assert_eq!(w.positive, Some(Certificate::Factor { edges: Graph::cycle(6).edges().collect() }));
        assert!(has_k_factor(&Graph::complete(4), 3).unwrap().exists);
        assert!(!has_k_factor(&Graph::star(3), 1).unwrap().exists);
        assert_eq!(has_k_factor(&Graph::complete(5), 1).unwrap().negative, Some(Violation::OddDegreeSum));
        assert!(has_k_factor(&Graph::complete(5), 2).unwrap().exists);
        // three leaves compete for one centre
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap();
        assert!(!has_k_factor(&g, 1).unwrap().exists);
        let g = disjoint_union(&Graph::cycle(3), &Graph::cycle(4));
        assert!(has_k_factor(&g, 2).unwrap().exists);
        assert!(has_k_factor(&Graph::cycle(3), 0).is_err());
    }
}
