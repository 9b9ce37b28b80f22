//! Canonical forms and isomorphism-class enumeration for small graphs.
//!
//! Canonical labeling is individualization/refinement without automorphism
//! pruning, except that twins inside a cell are explored once. This is
//! exhaustive and exact, and fast enough for the sizes used here (n <= 10).

use std::collections::HashSet;

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// Default largest `n` accepted by [`enumerate_graphs`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// Hard ceiling for canonical labeling (the encoding is a `u128`).
pub const CANON_MAX_VERTICES: usize = 16;

/// An isomorphism-invariant key: vertex count plus the minimal upper-triangle
/// bit string over all labelings explored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: u8,
    pub bits: u128,
}

impl CanonicalForm {
    /// The canonical representative this form encodes.
    pub fn to_graph(self) -> Graph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut g = Graph::empty(n);
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                idx += 1;
                if self.bits >> (total - idx) & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn encode(g: &Graph, order: &[usize]) -> u128 {
    // order[i] = old vertex placed at position i
    let mut bits = 0u128;
    let n = order.len();
    for j in 1..n {
        for i in 0..j {
            bits = bits << 1 | g.has_edge(order[i], order[j]) as u128;
        }
    }
    bits
}

/// Splits cells until the ordered partition is equitable. Cell order is
/// decided only by neighbor counts, so the result is labeling-invariant.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<VertexSet> = cells.iter().map(|c| c.iter().copied().collect()).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let key = masks
                        .iter()
                        .map(|m| g.neighbors(v).intersection(*m).len())
                        .collect();
                    (key, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if !next.is_empty() && keyed[0].0 != keyed[keyed.len() - 1].0 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn twins(g: &Graph, a: usize, b: usize) -> bool {
    let mut na = g.neighbors(a);
    let mut nb = g.neighbors(b);
    na.remove(b);
    nb.remove(a);
    na == nb
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = encode(g, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut explored: Vec<usize> = Vec::new();
    for &v in cell {
        if explored.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        explored.push(v);
        let mut next = cells[..target].to_vec();
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(g, refine(g, next), best);
    }
}

/// Canonical labeling: returns the canonical form and `perm` with
/// `perm[old] = new` such that `g.permuted(&perm)` is the canonical graph.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    assert!(
        n <= CANON_MAX_VERTICES,
        "canonical form limited to {CANON_MAX_VERTICES} vertices"
    );
    let mut best = None;
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| g.degree(v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    search(g, refine(g, cells), &mut best);
    let (bits, order) = best.unwrap_or((0, Vec::new()));
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    (CanonicalForm { n: n as u8, bits }, perm)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, perm) = canonical_labeling(g);
    g.permuted(&perm)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// One canonical representative per isomorphism class of graphs on exactly
/// `n` vertices, sorted by canonical form.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, GraphError> {
    enumerate_graphs_bounded(n, connected_only, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_graphs_bounded(
    n: usize,
    connected_only: bool,
    bound: usize,
) -> Result<Vec<Graph>, GraphError> {
    if n > bound || n > CANON_MAX_VERTICES {
        return Err(GraphError::EnumerationBound { n, bound });
    }
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for nbhd in 0u32..(1 << (k - 1)) {
                let mut h = Graph::empty(k);
                for e in g.edges() {
                    h.add_edge(e.u, e.v);
                }
                for u in VertexSet(nbhd) {
                    h.add_edge(u, k - 1);
                }
                let (form, perm) = canonical_labeling(&h);
                if seen.insert(form) {
                    next.push((form, h.permuted(&perm)));
                }
            }
        }
        next.sort_by_key(|(f, _)| *f);
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    if connected_only {
        level.retain(Graph::is_connected);
    }
    Ok(level)
}

/// All graphs with between `lo` and `hi` vertices (inclusive).
pub fn enumerate_range(lo: usize, hi: usize, bound: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(enumerate_graphs_bounded(n, false, bound)?);
    }
    Ok(out)
}

/// Whether some `k`-subset of `g` induces a copy of `pattern`.
pub fn has_induced_pattern(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.n();
    if k > g.n() {
        return false;
    }
    let target = canonical_form(pattern);
    let edges = pattern.edge_count();
    subsets_of_size(g.n(), k).any(|w| {
        let sub = g.induced_subgraph(w).unwrap().graph;
        sub.edge_count() == edges && canonical_form(&sub) == target
    })
}

/// All `k`-subsets of `{0..n}` in increasing bitmask order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit: u64 = 1 << n;
    let start: u64 = if k == 0 { 0 } else { (1 << k) - 1 };
    let mut cur = Some(start).filter(|&s| s < limit || (k == 0));
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 {
            None
        } else {
            // Gosper's hack
            let c = s & s.wrapping_neg();
            let r = s + c;
            let nxt = (((r ^ s) >> 2) / c) | r;
            Some(nxt).filter(|&x| x < limit)
        };
        Some(VertexSet(s as u32))
    })
}
