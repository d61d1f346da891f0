//! Simple undirected graphs on labels `0..n`, the algebraic constructions
//! (join, disjoint union, complement, deletion) and the block-structured
//! extremal families used throughout the crate.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Simple undirected graph. Neighbour lists are kept sorted and duplicate
/// free, so two graphs compare equal exactly when their edge sets agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph `I_n`. `n = 0` is allowed here and acts as the unit
    /// of join and disjoint union.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.insert(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert(n - 1, 0);
        }
        g
    }

    /// Star `K_{1,leaves}` with centre `0`.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert(0, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        join(&Graph::empty(a), &Graph::empty(b))
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// labels outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::UnknownVertex { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(invalid(format!("duplicate edge ({u}, {v})")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Adds `uv` if absent. Panics on a loop or an out-of-range label.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.order() && v < self.order(), "label out of range");
        if !self.has_edge(u, v) {
            self.insert(u, v);
        }
    }

    fn insert(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            if let Err(pos) = list.binary_search(&b) {
                list.insert(pos, b);
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            if let Ok(pos) = list.binary_search(&b) {
                list.remove(pos);
            }
        }
        true
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Component label per vertex (labels in order of first appearance) and
    /// the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected in the usual sense; the one-vertex graph is connected and
    /// the null graph is not.
    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().1 == 1
    }

    /// Induced subgraph on `keep` (taken in the given order); vertex `keep[i]`
    /// becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut map = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> =
                    self.adj[v].iter().map(|&u| map[u]).filter(|&u| u != usize::MAX).collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    /// Adjacency rows as bit masks; only valid for `n <= 64`.
    pub(crate) fn bitsets(&self) -> Vec<u64> {
        debug_assert!(self.order() <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect()
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        Wire { n: self.order(), edges: self.edges().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let w = Wire::deserialize(d)?;
        Graph::from_edges(w.n, &w.edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Elementary {
    Complete,
    Independent,
}

pub fn build_elementary(kind: Elementary, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("elementary graphs need at least one vertex"));
    }
    Ok(match kind {
        Elementary::Complete => Graph::complete(n),
        Elementary::Independent => Graph::empty(n),
    })
}

/// `G ∨ H`: labels of `g` come first, `h` is shifted by `|V(g)|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = disjoint_union(g, h);
    let shift = g.order();
    for u in 0..g.order() {
        for v in 0..h.order() {
            out.insert(u, shift + v);
        }
    }
    out
}

/// `G + H`, with `h` shifted past `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.order();
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|list| list.iter().map(|&v| v + shift).collect()));
    Graph { adj }
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let adj = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && !g.has_edge(v, u)).collect())
        .collect();
    Graph { adj }
}

/// Result of [`delete`]: the remaining graph and, for each old label, its
/// new label (or `None` when deleted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    pub graph: Graph,
    pub relabel: Vec<Option<usize>>,
}

/// `G − S − E'`: removes `edges`, then the `vertices` with their incident
/// edges, relabelling survivors contiguously in increasing order.
pub fn delete(g: &Graph, vertices: &[usize], edges: &[(usize, usize)]) -> Result<Deletion> {
    let n = g.order();
    let mut removed = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(Error::UnknownVertex { vertex: v, order: n });
        }
        removed[v] = true;
    }
    let mut work = g.clone();
    for &(u, v) in edges {
        if !work.remove_edge(u, v) {
            return Err(Error::UnknownEdge(u, v));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let mut relabel = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        relabel[v] = Some(i);
    }
    Ok(Deletion { graph: work.induced(&keep), relabel })
}

/// Consecutive label blocks `0..s0`, `s0..s0+s1`, ...
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    pub sizes: Vec<usize>,
}

impl BlockLayout {
    pub fn new(sizes: Vec<usize>) -> Self {
        BlockLayout { sizes }
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }

    /// Block index of every label.
    pub fn block_of(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect()
    }
}

/// `G^(r) = I_r ∨ K_r ∨ (K_{n−3r−1} + I_{r+1})` with layout
/// `[r, r, n−3r−1, r+1]`.
pub fn build_extremal_gr(n: usize, r: usize) -> Result<(Graph, BlockLayout)> {
    if r < 1 {
        return Err(invalid("r must be at least 1"));
    }
    if n < 3 * r + 2 {
        return Err(invalid(format!("n = {n} must be at least 3r + 2 = {}", 3 * r + 2)));
    }
    let big = n - 3 * r - 1;
    let g = join(
        &join(&Graph::empty(r), &Graph::complete(r)),
        &disjoint_union(&Graph::complete(big), &Graph::empty(r + 1)),
    );
    Ok((g, BlockLayout::new(vec![r, r, big, r + 1])))
}

/// `G^(s) = I_r ∨ K_s ∨ (K_{n−2s−r−1} + I_{s+1})` laid out on the refined
/// blocks `[r, r, s−r, n−2s−r−1, s−r, r+1]`, so that blocks 3..=5 line up
/// with the large clique of [`build_extremal_gr`].
pub fn build_gs(n: usize, r: usize, s: usize) -> Result<(Graph, BlockLayout)> {
    if r < 1 || s < r {
        return Err(invalid(format!("need s >= r >= 1, got r = {r}, s = {s}")));
    }
    if n < 2 * s + r + 2 {
        return Err(invalid(format!("n = {n} must be at least 2s + r + 2 = {}", 2 * s + r + 2)));
    }
    let clique = n - 2 * s - r - 1;
    let g = join(
        &join(&Graph::empty(r), &Graph::complete(s)),
        &disjoint_union(&Graph::complete(clique), &Graph::empty(s + 1)),
    );
    Ok((g, BlockLayout::new(vec![r, r, s - r, clique, s - r, r + 1])))
}

/// `I_r ∨ K_s ∨ (K_{n_1} + ⋯ + K_{n_p})` with every `n_i` odd.
pub fn build_join_family(r: usize, s: usize, parts: &[usize]) -> Result<Graph> {
    if let Some(&bad) = parts.iter().find(|&&p| p == 0 || p % 2 == 0) {
        return Err(invalid(format!("part sizes must be odd and positive, got {bad}")));
    }
    let tail = parts
        .iter()
        .fold(Graph::empty(0), |acc, &p| disjoint_union(&acc, &Graph::complete(p)));
    Ok(join(&join(&Graph::empty(r), &Graph::complete(s)), &tail))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub order: usize,
    pub connected: bool,
    pub min_degree: usize,
    pub edge_count: usize,
    /// Degree multiset, sorted descending.
    pub degrees: Vec<usize>,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    GraphStats {
        order: g.order(),
        connected: g.is_connected(),
        min_degree: g.min_degree(),
        edge_count: g.edge_count(),
        degrees,
    }
}
