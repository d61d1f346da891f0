//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, breadth-first search with blossom contraction, O(n³)).

use std::collections::VecDeque;

use super::{Certificate, FactorWitness};
use crate::error::{Error, Result};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        let mut mate = vec![NONE; n];
        // greedy warm start
        for v in 0..n {
            if mate[v] == NONE {
                if let Some(&u) = g.neighbors(v).iter().find(|&&u| mate[u] == NONE) {
                    mate[v] = u;
                    mate[u] = v;
                }
            }
        }
        Blossom {
            g,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from `root`; returns its free end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<usize> {
        for v in 0..self.g.order() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(mut u) = self.find_path(v) {
                while u != NONE {
                    let pv = self.parent[u];
                    let ppv = self.mate[pv];
                    self.mate[u] = pv;
                    self.mate[pv] = u;
                    u = ppv;
                }
            }
        }
        self.mate
    }
}

/// Edges `(u, v)`, `u < v`, of a maximum matching.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mate = Blossom::new(g).run();
    (0..g.order()).filter(|&v| mate[v] != NONE && v < mate[v]).map(|v| (v, mate[v])).collect()
}

pub(crate) fn validate_matching(g: &Graph, edges: &[(usize, usize)]) -> Result<()> {
    let mut covered = vec![false; g.order()];
    for &(u, v) in edges {
        if !g.has_edge(u, v) || covered[u] || covered[v] {
            return Err(Error::OracleDisagreement(format!("matching edge ({u}, {v}) is invalid")));
        }
        covered[u] = true;
        covered[v] = true;
    }
    Ok(())
}

/// Maximum matching as a witness; `exists` means the matching is perfect.
pub fn max_matching(g: &Graph) -> Result<FactorWitness> {
    let edges = maximum_matching(g);
    validate_matching(g, &edges)?;
    let perfect = 2 * edges.len() == g.order();
    Ok(FactorWitness { exists: perfect, positive: Some(Certificate::Matching { edges }), negative: None })
}

pub(crate) fn has_perfect_matching(g: &Graph) -> bool {
    g.order().is_multiple_of(2) && 2 * maximum_matching(g).len() == g.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};

    fn size(g: &Graph) -> usize {
        maximum_matching(g).len()
    }

    #[test]
    fn examples() {
        let w = max_matching(&Graph::complete(4)).unwrap();
        assert!(w.exists);
        assert_eq!(size(&Graph::complete(4)), 2);
        let w = max_matching(&Graph::star(3)).unwrap();
        assert!(!w.exists);
        assert_eq!(size(&Graph::star(3)), 1);
        assert!(max_matching(&Graph::cycle(6)).unwrap().exists);
        assert_eq!(size(&Graph::cycle(6)), 3);
    }

    #[test]
    fn blossoms_are_contracted() {
        // triangle with a pendant on each corner: greedy can get stuck
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(size(&g), 3);
        // Petersen graph has a perfect matching
        let mut p = Graph::cycle(5);
        p = disjoint_union(&p, &Graph::empty(5));
        for i in 0..5 {
            p.add_edge(i, 5 + i);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(size(&p), 5);
        assert_eq!(size(&Graph::cycle(7)), 3);
        assert_eq!(size(&join(&Graph::empty(3), &Graph::empty(5))), 3);
    }
}
