//! Graph corpora: canonical forms, isomorph-free exhaustive generation of
//! connected graphs, and seeded random sampling.
//!
//! Canonical labelling is a plain individualisation-refinement search:
//! refine the ordered partition by neighbour counts until stable, branch on
//! each vertex of the first non-singleton cell, and keep the lexicographically
//! largest adjacency code over all discrete leaves. Twin vertices in the
//! branching cell give isomorphic subtrees, so only one of each twin class is
//! explored. Intended for small orders (at most 64 vertices, practical well
//! below that).

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order for which [`connected_graphs`] will enumerate.
pub const EXHAUSTIVE_CAP: usize = 8;

type Cells = Vec<Vec<usize>>;

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | (1 << v))
}

fn refine(adj: &[u64], mut cells: Cells) -> Cells {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| cell_mask(c)).collect();
        let mut changed = false;
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            let before = next.len();
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            changed |= next.len() - before > 1;
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn leaf_code(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut code = vec![0u64; bits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    code
}

fn search(adj: &[u64], cells: Cells, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    let cells = refine(adj, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = leaf_code(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = tried.iter().any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend(cells[..target].iter().cloned());
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend(cells[target + 1..].iter().cloned());
        search(adj, next, best);
    }
}

/// Canonical relabelling: returns `perm` with `perm[old] = new` such that
/// isomorphic graphs map to identical graphs.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.order();
    assert!(n <= 64, "canonical labelling supports at most 64 vertices");
    if n == 0 {
        return Vec::new();
    }
    let adj = g.bitsets();
    let mut best = None;
    search(&adj, vec![(0..n).collect()], &mut best);
    let (_, order) = best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    perm
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && {
            let mut a = g.degrees();
            let mut b = h.degrees();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
        && canonical_form(g) == canonical_form(h)
}

fn extend_level(parents: &[Graph]) -> Vec<Graph> {
    let k = parents[0].order();
    let mut children: Vec<(Vec<u64>, Graph)> = parents
        .par_iter()
        .flat_map_iter(|p| {
            (1u64..(1 << k)).map(move |mask| {
                let mut child = Graph::empty(k + 1);
                for (u, v) in p.edges() {
                    child.add_edge(u, v);
                }
                for u in 0..k {
                    if mask >> u & 1 == 1 {
                        child.add_edge(u, k);
                    }
                }
                let canon = canonical_form(&child);
                (leaf_code(&canon.bitsets(), &(0..=k).collect::<Vec<_>>()), canon)
            })
        })
        .collect();
    children.sort_by(|a, b| a.0.cmp(&b.0));
    children.dedup_by(|a, b| a.0 == b.0);
    children.into_iter().map(|(_, g)| g).collect()
}

static LEVELS: [OnceLock<Vec<Graph>>; EXHAUSTIVE_CAP + 1] = [const { OnceLock::new() }; EXHAUSTIVE_CAP + 1];

/// All connected graphs of order `n` up to isomorphism, each in canonical
/// labelling, in a fixed deterministic order. Results are cached per order.
pub fn connected_graphs(n: usize) -> Result<&'static [Graph]> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    if n > EXHAUSTIVE_CAP {
        return Err(Error::TooLarge { what: "exhaustive corpus order", got: n, cap: EXHAUSTIVE_CAP });
    }
    Ok(LEVELS[n].get_or_init(|| {
        if n == 1 {
            vec![Graph::empty(1)]
        } else {
            extend_level(connected_graphs(n - 1).expect("smaller order is in range"))
        }
    }))
}

/// Connected graphs of every order in `lo..=hi`.
pub fn connected_graphs_upto(lo: usize, hi: usize) -> Result<Vec<&'static Graph>> {
    let mut out = Vec::new();
    for n in lo.max(1)..=hi {
        out.extend(connected_graphs(n)?.iter());
    }
    Ok(out)
}

/// Erdős–Rényi `G(n, p)` with the given RNG.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen::<f64>() < p {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Seeded sample of connected graphs of order `n`: each draw picks an edge
/// density `p` uniformly from `[0, 1)` and redraws `G(n, p)` until it is
/// connected. Same seed, same corpus.
pub fn sample_connected(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_connected(n, &mut rng)).collect()
}

pub fn random_connected<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    loop {
        let p: f64 = rng.gen();
        let g = gnp(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}
