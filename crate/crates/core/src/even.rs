//! Even-connection with respect to an edge multiset and the colon graph of
//! `(I^{s+1} : e_1 ... e_s)`.
//!
//! A certificate is a walk `p_0 .. p_{2k+1}` whose odd-position edges
//! `p_{2l+1} p_{2l+2}` are drawn from the multiset without exceeding any
//! multiplicity. Vertices may repeat, which is what allows `u = v`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::graph::{Edge, Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::monomial::{edge_ideal, standard_universe, Monomial, MonomialIdeal};
use crate::report::{SuiteReport, Violation};

/// The product `e_1 ... e_s`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeMultiset {
    edges: Vec<Edge>,
}

impl EdgeMultiset {
    pub fn new(g: &Graph, edges: &[Edge]) -> Result<EdgeMultiset, AlgebraError> {
        if edges.is_empty() {
            return Err(AlgebraError::EmptyMultiset);
        }
        if let Some(e) = edges.iter().find(|e| e.v >= g.n() || !g.has_edge(e.u, e.v)) {
            return Err(AlgebraError::ForeignEdge(*e));
        }
        let mut edges = edges.to_vec();
        edges.sort();
        Ok(EdgeMultiset { edges })
    }

    /// Every multiset of `s` edges of `g`, in lexicographic order.
    pub fn all_of_size(g: &Graph, s: usize) -> Vec<EdgeMultiset> {
        fn go(
            edges: &[Edge],
            from: usize,
            left: usize,
            cur: &mut Vec<Edge>,
            out: &mut Vec<EdgeMultiset>,
        ) {
            if left == 0 {
                out.push(EdgeMultiset { edges: cur.clone() });
                return;
            }
            for i in from..edges.len() {
                cur.push(edges[i]);
                go(edges, i, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if s > 0 {
            go(&g.edges(), 0, s, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn multiplicity(&self, e: Edge) -> usize {
        self.edges.iter().filter(|&&f| f == e).count()
    }

    /// Distinct edges with multiplicities.
    pub fn distinct(&self) -> Vec<(Edge, usize)> {
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for &e in &self.edges {
            match out.last_mut() {
                Some((f, c)) if *f == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// Removes one copy of `e`; `None` if absent. The result may be empty.
    pub fn without(&self, e: Edge) -> Option<EdgeMultiset> {
        let pos = self.edges.iter().position(|&f| f == e)?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Some(EdgeMultiset { edges })
    }

    /// All sub-multisets, the empty one included.
    pub fn sub_multisets(&self) -> Vec<EdgeMultiset> {
        let mut out = vec![Vec::new()];
        for (e, c) in self.distinct() {
            out = out
                .into_iter()
                .flat_map(|base: Vec<Edge>| {
                    (0..=c).map(move |k| {
                        let mut v = base.clone();
                        v.extend(std::iter::repeat_n(e, k));
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|edges| EdgeMultiset { edges })
            .collect()
    }

    pub fn monomial(&self, nvars: usize) -> Monomial {
        Monomial::of_edges(nvars, &self.edges)
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |a, e| a.union(e.vertices()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EvenConnectionCertificate {
    /// `p_0 .. p_{2k+1}`.
    pub path: Vec<usize>,
    /// `edge_assignment[l]` is the multiset member used at position `2l + 1`.
    pub edge_assignment: Vec<Edge>,
}

impl EvenConnectionCertificate {
    fn from_path(path: Vec<usize>) -> EvenConnectionCertificate {
        let edge_assignment = (0..(path.len() - 2) / 2)
            .map(|l| Edge::new(path[2 * l + 1], path[2 * l + 2]).expect("walk edge"))
            .collect();
        EvenConnectionCertificate {
            path,
            edge_assignment,
        }
    }

    pub fn k(&self) -> usize {
        self.edge_assignment.len()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.path[0], *self.path.last().unwrap())
    }

    pub fn reversed(&self) -> EvenConnectionCertificate {
        let mut path = self.path.clone();
        path.reverse();
        let mut edge_assignment = self.edge_assignment.clone();
        edge_assignment.reverse();
        EvenConnectionCertificate {
            path,
            edge_assignment,
        }
    }

    /// Checks the four defining conditions against `g` and `m`.
    pub fn is_valid(&self, g: &Graph, m: &EdgeMultiset) -> bool {
        let p = &self.path;
        let k = self.k();
        if k < 1 || p.len() != 2 * k + 2 || p.iter().any(|&x| x >= g.n()) {
            return false;
        }
        if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        for (l, e) in self.edge_assignment.iter().enumerate() {
            if Edge::new(p[2 * l + 1], p[2 * l + 2]).ok() != Some(*e) {
                return false;
            }
        }
        m.distinct()
            .iter()
            .all(|&(e, c)| self.edge_assignment.iter().filter(|&&f| f == e).count() <= c)
            && self.edge_assignment.iter().all(|&e| m.multiplicity(e) > 0)
    }
}

/// For every even-connected pair `u <= v`, the lexicographically smallest
/// certificate of each achievable `k`.
type Connections = BTreeMap<(usize, usize), BTreeMap<usize, EvenConnectionCertificate>>;

/// Layered search over (vertex, usage vector); the position parity is the
/// layer parity. Within a layer each state keeps its lexicographically
/// smallest walk, so certificates are deterministic.
fn search(g: &Graph, m: &EdgeMultiset) -> Connections {
    let distinct = m.distinct();
    let mut stride = Vec::with_capacity(distinct.len());
    let mut acc = 1usize;
    for &(_, c) in &distinct {
        stride.push(acc);
        acc *= c + 1;
    }
    let used = |code: usize, i: usize| (code / stride[i]) % (distinct[i].1 + 1);

    let mut out = Connections::new();
    for u in 0..g.n() {
        let mut layer: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        layer.insert((u, 0), vec![u]);
        let mut pos = 0usize;
        while !layer.is_empty() {
            let mut next: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
            let mut offer = |key: (usize, usize), path: &Vec<usize>, x: usize| {
                let mut cand = path.clone();
                cand.push(x);
                match next.get(&key) {
                    Some(old) if *old <= cand => {}
                    _ => {
                        next.insert(key, cand);
                    }
                }
            };
            for (&(v, code), path) in &layer {
                if pos.is_multiple_of(2) {
                    for x in g.neighbors(v) {
                        offer((x, code), path, x);
                    }
                } else {
                    for (i, &(e, c)) in distinct.iter().enumerate() {
                        if let Some(x) = e.other(v) {
                            if used(code, i) < c {
                                offer((x, code + stride[i]), path, x);
                            }
                        }
                    }
                }
            }
            pos += 1;
            if pos % 2 == 1 && pos >= 3 {
                let k = (pos - 1) / 2;
                for (&(v, _), path) in &next {
                    if v < u {
                        continue;
                    }
                    let slot = out.entry((u, v)).or_default();
                    match slot.get(&k) {
                        Some(old) if old.path <= *path => {}
                        _ => {
                            slot.insert(k, EvenConnectionCertificate::from_path(path.clone()));
                        }
                    }
                }
            }
            layer = next;
        }
    }
    out
}

/// All pairs `u <= v` (with `u = v` allowed) that are even-connected with
/// respect to `m`, each with a shortest certificate.
pub fn even_connected_pairs(
    g: &Graph,
    m: &EdgeMultiset,
) -> Vec<(usize, usize, EvenConnectionCertificate)> {
    search(g, m)
        .into_iter()
        .map(|((u, v), by_k)| (u, v, by_k.into_values().next().unwrap()))
        .collect()
}

/// A pair with endpoints outside `w` whose certificate has the largest
/// `k`; ties go to the lexicographically smallest walk.
pub fn longest_even_connection(
    g: &Graph,
    m: &EdgeMultiset,
    w: VertexSet,
) -> Option<EvenConnectionCertificate> {
    let mut best: Option<EvenConnectionCertificate> = None;
    for ((u, v), by_k) in search(g, m) {
        if w.contains(u) || w.contains(v) {
            continue;
        }
        let (_, cert) = by_k.into_iter().next_back().unwrap();
        let better = match &best {
            None => true,
            Some(b) => {
                (cert.k(), std::cmp::Reverse(&cert.path)) > (b.k(), std::cmp::Reverse(&b.path))
            }
        };
        if better {
            best = Some(cert);
        }
    }
    best
}

/// Every endpoint of a longest even-connection avoiding `w`.
pub fn longest_endpoints(g: &Graph, m: &EdgeMultiset, w: VertexSet) -> VertexSet {
    let all = search(g, m);
    let k_of =
        |by_k: &BTreeMap<usize, EvenConnectionCertificate>| *by_k.keys().next_back().unwrap();
    let outside = |&(&(u, v), _): &(&(usize, usize), _)| !w.contains(u) && !w.contains(v);
    let Some(top) = all.iter().filter(outside).map(|(_, b)| k_of(b)).max() else {
        return VertexSet::EMPTY;
    };
    all.iter()
        .filter(outside)
        .filter(|(_, b)| k_of(b) == top)
        .fold(VertexSet::EMPTY, |acc, (&(u, v), _)| {
            acc.union(VertexSet::from_iter([u, v]))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonGraphResult {
    /// Vertices `0 .. n` are those of the input graph; whisker vertices
    /// `(u, copy 2)` for self-connected `u` follow in increasing `u`.
    pub graph: Graph,
    /// Even-connected pairs that are not edges of the input graph.
    pub new_pairs: Vec<(usize, usize, EvenConnectionCertificate)>,
    pub origin: (Graph, EdgeMultiset),
}

impl ColonGraphResult {
    /// Whisker vertex of `u`, if `u` is even-connected to itself.
    pub fn whisker_of(&self, u: usize) -> Option<usize> {
        let n = self.origin.0.n();
        let mut idx = n;
        for &(a, b, _) in &self.new_pairs {
            if a == b {
                if a == u {
                    return Some(idx);
                }
                idx += 1;
            }
        }
        None
    }

    /// Original vertex of each vertex of `graph`.
    pub fn base_vertex(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.origin.0.n()).collect();
        out.extend(self.new_pairs.iter().filter(|p| p.0 == p.1).map(|p| p.0));
        out
    }
}

/// The graph `G'` of the polarization of `(I(G)^{s+1} : m)`.
pub fn colon_graph(g: &Graph, m: &EdgeMultiset) -> ColonGraphResult {
    let new_pairs: Vec<_> = even_connected_pairs(g, m)
        .into_iter()
        .filter(|&(u, v, _)| !g.has_edge(u, v))
        .collect();
    let n = g.n();
    let whiskers = new_pairs.iter().filter(|p| p.0 == p.1).count();
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut next = n;
    for &(u, v, _) in &new_pairs {
        if u == v {
            edges.push((u, next));
            next += 1;
        } else {
            edges.push((u, v));
        }
    }
    let graph = Graph::from_edge_list(n + whiskers, &edges).expect("colon graph is simple");
    ColonGraphResult {
        graph,
        new_pairs,
        origin: (g.clone(), m.clone()),
    }
}

/// `(I(G)^{s+1} : m)` computed from the definition.
pub fn direct_colon(g: &Graph, m: &EdgeMultiset) -> MonomialIdeal {
    power_colon(&edge_ideal(g), m)
}

/// `(I^{|m|+1} : m)`; for the empty multiset this is `I`.
fn power_colon(i: &MonomialIdeal, m: &EdgeMultiset) -> MonomialIdeal {
    if i.is_zero() {
        return i.clone();
    }
    let p = i.power(m.len() as u32 + 1).expect("positive power");
    p.colon(&m.monomial(i.nvars()))
}

/// Edge ideal of the edges of `g` that avoid `removed`, over all `n`
/// variables.
fn edge_ideal_avoiding(g: &Graph, removed: VertexSet) -> MonomialIdeal {
    let n = g.n();
    let gens = g
        .edges()
        .into_iter()
        .filter(|e| e.vertices().intersection(removed).is_empty())
        .map(|e| Monomial::of_edge(n, e))
        .collect();
    MonomialIdeal::new(standard_universe(n), gens)
}

/// Compares the combinatorial colon graph with the polarized direct colon.
/// Returns a description of the first discrepancy.
pub fn colon_graph_mismatch(g: &Graph, m: &EdgeMultiset) -> Option<String> {
    let direct = direct_colon(g, m);
    if let Some(bad) = direct.generators().iter().find(|x| x.degree() != 2) {
        return Some(format!("generator {bad:?} of degree {}", bad.degree()));
    }
    let result = colon_graph(g, m);
    for (u, v, cert) in &result.new_pairs {
        if !cert.is_valid(g, m) || cert.endpoints() != (*u, *v) {
            return Some(format!("invalid certificate for {u}{v}: {:?}", cert.path));
        }
    }
    let (pol, _) = direct.polarize();
    let combinatorial = edge_ideal(&result.graph);
    if pol.nvars() != combinatorial.nvars() || pol.generators() != combinatorial.generators() {
        return Some(format!(
            "colon {direct:?} but graph gives {combinatorial:?}"
        ));
    }
    None
}

/// Degree-2 generation and the even-connection characterization for every
/// multiset of `s` edges of `g`.
pub fn check_even_connection_theorem(g: &Graph, s: usize) -> SuiteReport {
    let mut report = SuiteReport::new("even-connection");
    report.graphs_tested = 1;
    let code = emit_graph6(g);
    for m in EdgeMultiset::all_of_size(g, s) {
        let mismatch = colon_graph_mismatch(g, &m);
        report.check(mismatch.is_none(), || Violation {
            graph6: code.clone(),
            s: Some(s as u32),
            lhs: 1,
            rhs: 0,
            context: format!("m = {:?}: {}", m.edges(), mismatch.unwrap_or_default()),
        });
    }
    report
}

/// For a gap-free `g` and an endpoint `u` of a longest even-connection
/// avoiding `w`: every edge of `G' - W - N_{G'}[u]` is an edge of
/// `G - N_G[u]`. Vacuously true when no even-connected pair avoids `w`.
pub fn isolated_reduction_check(
    g: &Graph,
    m: &EdgeMultiset,
    w: VertexSet,
    u: usize,
) -> Result<bool, AlgebraError> {
    let ends = longest_endpoints(g, m, w);
    if ends.is_empty() {
        return Ok(true);
    }
    if !ends.contains(u) {
        return Err(AlgebraError::NotLongestEndpoint(u));
    }
    let result = colon_graph(g, m);
    let gp = &result.graph;
    let removed = w.union(gp.closed_neighborhood(&u)?);
    let rest = gp.vertices().difference(removed);
    let n = g.n();
    Ok(gp
        .edges()
        .iter()
        .filter(|e| rest.contains(e.u) && rest.contains(e.v))
        .all(|e| e.v < n && g.has_edge(e.u, e.v)))
}

/// A member of `m` with an endpoint of degree 1.
pub fn leaf_edge(g: &Graph, m: &EdgeMultiset) -> Option<Edge> {
    m.edges()
        .iter()
        .copied()
        .find(|e| g.degree(e.u) == 1 || g.degree(e.v) == 1)
}

/// Both sides of the leaf reduction `J = I^{s-1} : e_2 ... e_{s-1}` where
/// `J = I^s : m` and `e_1` is a leaf edge of `m`.
pub fn leaf_reduction_sides(g: &Graph, m: &EdgeMultiset) -> Option<(MonomialIdeal, MonomialIdeal)> {
    let e = leaf_edge(g, m)?;
    let rest = m.without(e).unwrap();
    let i = edge_ideal(g);
    Some((
        power_colon(&i, m),
        power_colon(&i, &rest)
            .with_universe(i.vars().to_vec())
            .ok()?,
    ))
}

/// Both sides of `J : w = I(G - N_G[w])^s : m + (u | u ∈ N(w))` for `w`
/// outside `N_G[m]`. With `closed` the variable list uses `N_G[w]`
/// instead, which adds `w` itself and breaks the identity whenever `w` is
/// not even-connected to itself.
pub fn vertex_colon_sides(
    g: &Graph,
    m: &EdgeMultiset,
    w: usize,
    closed: bool,
) -> Option<(MonomialIdeal, MonomialIdeal)> {
    let reach = g.closed_neighborhood(m.edges()).ok()?;
    if reach.contains(w) {
        return None;
    }
    let n = g.n();
    let lhs = direct_colon(g, m).colon(&Monomial::var(n, w));
    let nw = g.closed_neighborhood(&w).ok()?;
    let mut vars = g.neighbors(w);
    if closed {
        vars.insert(w);
    }
    let rhs = power_colon(&edge_ideal_avoiding(g, nw), m)
        .sum(&MonomialIdeal::variables(standard_universe(n), vars))
        .ok()?;
    Some((lhs, rhs))
}

/// Containment consequences of the colon structure for `w ∈ N_G[e]`,
/// `e ∈ m`, with `X = N_{G'}[w] ∩ V(G)` and `F` ranging over
/// sub-multisets of `m - e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColonStructure {
    /// Each `I(G - X)^{|F|+1} : F + (N_{G'}(w))` lies in `J : w`.
    pub lower: bool,
    /// `J : w` lies in the sum of all of them.
    pub upper: bool,
    /// For `F` inside `G - X`, `I(G - X)^{|F|+1} : F` is
    /// `I(G - N_G[w])^{|F|+1} : F` restricted to generators avoiding `X`.
    pub induced: bool,
}

pub fn colon_structure(g: &Graph, m: &EdgeMultiset, e: Edge, w: usize) -> Option<ColonStructure> {
    let rest = m.without(e)?;
    if !g.closed_neighborhood(&e).ok()?.contains(w) {
        return None;
    }
    let n = g.n();
    let vars = standard_universe(n);
    let jw = direct_colon(g, m).colon(&Monomial::var(n, w));
    let gp = colon_graph(g, m);
    let full = gp.graph.closed_neighborhood(&w).ok()?;
    let base = gp.base_vertex();
    let x = full.iter().filter(|&v| v < n).collect::<VertexSet>();
    // N_{G'}(w) read back in the original ring; the whisker w' becomes w
    let nbr = gp
        .graph
        .neighbors(w)
        .iter()
        .map(|v| base[v])
        .collect::<VertexSet>();
    let linear = MonomialIdeal::variables(vars.clone(), nbr);
    let outer = g.closed_neighborhood(&w).ok()?;

    let mut lower = true;
    let mut induced = true;
    let mut total = linear.clone();
    for f in rest.sub_multisets() {
        let a = power_colon(&edge_ideal_avoiding(g, x), &f);
        let piece = a.sum(&linear).ok()?;
        lower &= jw.contains_ideal(&piece);
        total = total.sum(&a).ok()?;
        if !f.vertices().intersection(x).is_empty() {
            continue;
        }
        let b = power_colon(&edge_ideal_avoiding(g, outer), &f);
        let restricted: Vec<Monomial> = b
            .generators()
            .iter()
            .filter(|gen| gen.support().intersection(x).is_empty())
            .cloned()
            .collect();
        induced &= a.generators() == &restricted[..];
    }
    Some(ColonStructure {
        lower,
        upper: total.contains_ideal(&jw),
        induced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{regularity, EngineConfig};
    use crate::canon::enumerate_graphs;
    use crate::invariants::is_gap_free;
    use proptest::prelude::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn ms(g: &Graph, edges: &[Edge]) -> EdgeMultiset {
        EdgeMultiset::new(g, edges).unwrap()
    }

    fn pairs(g: &Graph, m: &EdgeMultiset) -> Vec<(usize, usize)> {
        even_connected_pairs(g, m)
            .into_iter()
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    #[test]
    fn multiset_validation() {
        let g = Graph::path(3);
        assert_eq!(EdgeMultiset::new(&g, &[]), Err(AlgebraError::EmptyMultiset));
        assert_eq!(
            EdgeMultiset::new(&g, &[e(0, 2)]),
            Err(AlgebraError::ForeignEdge(e(0, 2)))
        );
        assert_eq!(EdgeMultiset::all_of_size(&Graph::cycle(4), 2).len(), 10);
        let m = ms(&g, &[e(1, 2), e(0, 1), e(0, 1)]);
        assert_eq!(m.distinct(), vec![(e(0, 1), 2), (e(1, 2), 1)]);
        assert_eq!(m.sub_multisets().len(), 6);
    }

    #[test]
    fn path_chord() {
        // x1..x5 as 0..4, m = x2x3
        let g = Graph::path(5);
        let m = ms(&g, &[e(1, 2)]);
        let found = even_connected_pairs(&g, &m);
        let (_, _, cert) = found.iter().find(|p| (p.0, p.1) == (0, 3)).unwrap();
        assert_eq!(cert.path, vec![0, 1, 2, 3]);
        assert!(cert.is_valid(&g, &m));
        let r = colon_graph(&g, &m);
        let mut expected = Graph::path(5);
        expected.add_edge(0, 3);
        assert_eq!(r.graph, expected);
        assert_eq!(colon_graph_mismatch(&g, &m), None);
    }

    #[test]
    fn single_edge_has_no_new_pairs() {
        let g = Graph::complete(2);
        let m = ms(&g, &[e(0, 1)]);
        assert_eq!(pairs(&g, &m), vec![(0, 1)]);
        let r = colon_graph(&g, &m);
        assert!(r.new_pairs.is_empty());
        assert_eq!(r.graph, g);
        assert!(check_even_connection_theorem(&g, 1).pass);
    }

    #[test]
    fn square_chord() {
        let g = Graph::cycle(4);
        let m = ms(&g, &[e(1, 2)]);
        assert!(pairs(&g, &m).contains(&(0, 3)));
        assert!(direct_colon(&g, &m).contains(&Monomial::of_edge(4, e(0, 3))));
    }

    #[test]
    fn pentagon_colon_graphs_have_regularity_two() {
        let g = Graph::cycle(5);
        let cfg = EngineConfig::default();
        for edge in g.edges() {
            let r = colon_graph(&g, &ms(&g, &[edge]));
            assert_eq!(regularity(&edge_ideal(&r.graph), &cfg).unwrap(), 2);
        }
        assert!(check_even_connection_theorem(&g, 1).pass);
        assert_eq!(check_even_connection_theorem(&g, 1).checks, 5);
    }

    #[test]
    fn triangle_self_connection_gives_whisker() {
        // u = 0 reaches itself through 0,1,2,0 using the edge 12
        let g = Graph::complete(3);
        let m = ms(&g, &[e(1, 2)]);
        let r = colon_graph(&g, &m);
        assert!(r.new_pairs.iter().any(|p| p.0 == 0 && p.1 == 0));
        assert_eq!(r.whisker_of(0), Some(3));
        assert_eq!(colon_graph_mismatch(&g, &m), None);
    }

    #[test]
    fn cricket_passes() {
        assert!(check_even_connection_theorem(&Graph::cricket(), 1).pass);
        assert!(check_even_connection_theorem(&Graph::cricket(), 2).pass);
    }

    #[test]
    fn theorem_on_small_graphs() {
        for n in 2..=5 {
            for g in enumerate_graphs(n, false).unwrap() {
                for s in 1..=2 {
                    let r = check_even_connection_theorem(&g, s);
                    assert!(r.pass, "{:?}", r.violations);
                }
            }
        }
    }

    #[test]
    fn leaf_reduction_holds() {
        for n in 2..=6 {
            for g in enumerate_graphs(n, false).unwrap() {
                for s in 1..=2 {
                    for m in EdgeMultiset::all_of_size(&g, s) {
                        if let Some((lhs, rhs)) = leaf_reduction_sides(&g, &m) {
                            assert_eq!(lhs, rhs, "{g:?} {m:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_colon_uses_open_neighborhood() {
        let mut literal_failures = 0;
        for n in 2..=6 {
            for g in enumerate_graphs(n, false).unwrap() {
                for s in 1..=2 {
                    for m in EdgeMultiset::all_of_size(&g, s) {
                        for w in 0..n {
                            if let Some((lhs, rhs)) = vertex_colon_sides(&g, &m, w, false) {
                                assert_eq!(lhs, rhs, "{g:?} {m:?} w={w}");
                                let (l2, r2) = vertex_colon_sides(&g, &m, w, true).unwrap();
                                if l2 != r2 {
                                    literal_failures += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(literal_failures > 0);
    }

    #[test]
    fn colon_structure_containments() {
        for n in 2..=6 {
            for g in enumerate_graphs(n, false).unwrap() {
                for s in 1..=2 {
                    for m in EdgeMultiset::all_of_size(&g, s) {
                        for (edge, _) in m.distinct() {
                            for w in g.closed_neighborhood(&edge).unwrap() {
                                let c = colon_structure(&g, &m, edge, w).unwrap();
                                assert!(
                                    c.lower && c.upper && c.induced,
                                    "{g:?} {m:?} {edge} w={w} {c:?}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn isolated_reduction_on_pentagon() {
        let g = Graph::cycle(5);
        let m = ms(&g, &[e(0, 1)]);
        let cert = longest_even_connection(&g, &m, VertexSet::EMPTY).unwrap();
        assert!(isolated_reduction_check(&g, &m, VertexSet::EMPTY, cert.path[0]).unwrap());
    }

    #[test]
    fn isolated_reduction_vacuous_and_precondition() {
        let g = Graph::complete(2);
        let m = ms(&g, &[e(0, 1)]);
        // 01 is even-connected only through 0,1,0,1
        assert!(isolated_reduction_check(&g, &m, VertexSet::from_iter([0, 1]), 0).unwrap());
        let g = Graph::path(4);
        let m = ms(&g, &[e(1, 2)]);
        assert_eq!(
            isolated_reduction_check(&g, &m, VertexSet::EMPTY, 9),
            Err(AlgebraError::NotLongestEndpoint(9))
        );
    }

    #[test]
    fn isolated_reduction_on_gap_free_graphs() {
        for n in 2..=6 {
            for g in enumerate_graphs(n, false).unwrap() {
                if !is_gap_free(&g) {
                    continue;
                }
                for s in 1..=2 {
                    for m in EdgeMultiset::all_of_size(&g, s) {
                        for u in longest_endpoints(&g, &m, VertexSet::EMPTY) {
                            assert!(isolated_reduction_check(&g, &m, VertexSet::EMPTY, u).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn colon_graph_of_gap_free_is_gap_free() {
        for g in enumerate_graphs(5, false).unwrap() {
            if is_gap_free(&g) {
                for m in EdgeMultiset::all_of_size(&g, 1) {
                    let r = colon_graph(&g, &m);
                    assert!(is_gap_free(&r.graph.without_isolated().graph));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn certificates_reverse(seed in 0usize..156, pick in 0usize..64) {
            let graphs = enumerate_graphs(6, false).unwrap();
            let g = &graphs[seed];
            let all = EdgeMultiset::all_of_size(g, 2);
            prop_assume!(!all.is_empty());
            let m = &all[pick % all.len()];
            for (u, v, cert) in even_connected_pairs(g, m) {
                prop_assert!(cert.is_valid(g, m));
                let rev = cert.reversed();
                prop_assert!(rev.is_valid(g, m));
                prop_assert_eq!(rev.endpoints(), (v, u));
            }
        }
    }
}
