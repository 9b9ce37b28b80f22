//! Matching numbers, graph-class predicates and local regularity.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::betti::{regularity, EngineConfig};
use crate::canon::{canonical_form, has_induced_pattern};
use crate::error::EngineError;
use crate::graph::{Edge, Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::monomial::{edge_ideal, Monomial};
use crate::report::{SuiteReport, Violation};

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.edges
            .iter()
            .fold(VertexSet::EMPTY, |a, e| a.union(e.vertices()))
    }

    pub fn is_matching(&self) -> bool {
        self.vertices().len() == 2 * self.edges.len()
    }

    /// No edge of `g` joins two different edges of the matching.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let span = g.induced_subgraph(self.vertices()).unwrap().graph;
        self.is_matching() && span.edge_count() == self.edges.len()
    }
}

/// A maximum matching, by memoized branching on the lowest vertex.
pub fn maximum_matching(g: &Graph) -> Matching {
    fn go(g: &Graph, alive: VertexSet, memo: &mut HashMap<u32, Vec<Edge>>) -> Vec<Edge> {
        // lowest vertex with a live neighbor
        let Some(v) = alive
            .iter()
            .find(|&v| !g.neighbors(v).intersection(alive).is_empty())
        else {
            return Vec::new();
        };
        if let Some(m) = memo.get(&alive.0) {
            return m.clone();
        }
        let mut without = alive;
        without.remove(v);
        let mut best = go(g, without, memo);
        for u in g.neighbors(v).intersection(alive) {
            if best.len() * 2 >= alive.len() {
                break;
            }
            let mut rest = without;
            rest.remove(u);
            let mut m = go(g, rest, memo);
            if m.len() + 1 > best.len() {
                m.push(Edge::new(v, u).unwrap());
                best = m;
            }
        }
        memo.insert(alive.0, best.clone());
        best
    }
    let mut edges = go(g, g.vertices(), &mut HashMap::new());
    edges.sort();
    Matching { edges }
}

/// `β(G)`.
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).len()
}

/// A maximum induced matching: choosing an edge removes the closed
/// neighborhood of both endpoints from further consideration.
pub fn maximum_induced_matching(g: &Graph) -> Matching {
    fn go(g: &Graph, alive: VertexSet, memo: &mut HashMap<u32, Vec<Edge>>) -> Vec<Edge> {
        let Some(v) = alive
            .iter()
            .find(|&v| !g.neighbors(v).intersection(alive).is_empty())
        else {
            return Vec::new();
        };
        if let Some(m) = memo.get(&alive.0) {
            return m.clone();
        }
        let mut without = alive;
        without.remove(v);
        let mut best = go(g, without, memo);
        for u in g.neighbors(v).intersection(alive) {
            let e = Edge::new(v, u).unwrap();
            let rest = alive.difference(g.closed_neighborhood(&e).unwrap());
            let mut m = go(g, rest, memo);
            if m.len() + 1 > best.len() {
                m.push(e);
                best = m;
            }
        }
        memo.insert(alive.0, best.clone());
        best
    }
    let mut edges = go(g, g.vertices(), &mut HashMap::new());
    edges.sort();
    Matching { edges }
}

/// `ν(G)`.
pub fn induced_matching_number(g: &Graph) -> usize {
    maximum_induced_matching(g).len()
}

/// No two disjoint edges without an edge between them.
pub fn is_gap_free(g: &Graph) -> bool {
    let edges = g.edges();
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if a.vertices().intersection(b.vertices()).is_empty() {
                let joined = [a.u, a.v]
                    .iter()
                    .any(|&x| !g.neighbors(x).intersection(b.vertices()).is_empty());
                if !joined {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_claw_free(g: &Graph) -> bool {
    !has_induced_pattern(g, &Graph::star(3))
}

pub fn is_cricket_free(g: &Graph) -> bool {
    !has_induced_pattern(g, &Graph::cricket())
}

/// Maximum cardinality search order; reversed, it is a perfect elimination
/// ordering exactly when the graph is chordal.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut numbered = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = g
            .vertices()
            .difference(numbered)
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        numbered.insert(v);
        for u in g.neighbors(v).difference(numbered) {
            weight[u] += 1;
        }
    }
    order
}

/// Whether `order` is a perfect elimination ordering: each vertex's later
/// neighbors form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut later = g.vertices();
    for &v in order {
        later.remove(v);
        let nb = g.neighbors(v).intersection(later);
        if nb.iter().any(|u| {
            !nb.difference(VertexSet::singleton(u))
                .is_subset(g.neighbors(u))
        }) {
            return false;
        }
    }
    true
}

pub fn is_chordal(g: &Graph) -> bool {
    let mut order = maximum_cardinality_search(g);
    order.reverse();
    is_perfect_elimination_ordering(g, &order)
}

pub fn is_co_chordal(g: &Graph) -> bool {
    is_chordal(&g.complement())
}

/// `ν(G) = β(G)`.
pub fn is_cameron_walker(g: &Graph) -> bool {
    induced_matching_number(g) == matching_number(g)
}

/// `reg (I(G) : x)`. The colon is `I(G - N[x]) + (N(x))`; when that is the
/// zero ideal (an isolated vertex of an edgeless graph) this returns 0.
pub fn local_regularity(g: &Graph, x: usize, config: &EngineConfig) -> Result<u32, EngineError> {
    g.open_neighborhood(x)
        .map_err(crate::error::AlgebraError::from)?;
    let colon = edge_ideal(g).colon(&Monomial::var(g.n(), x));
    if colon.is_zero() {
        return Ok(0);
    }
    let r = regularity(&colon, config)?;
    if cfg!(debug_assertions) && config.homology.fault.is_none() && !g.neighbors(x).is_empty() {
        // linear colon ⟺ G - N[x] has a co-chordal edge set
        let rest = g.delete_closed_neighborhood(x).unwrap().graph;
        debug_assert_eq!(r <= 2, is_co_chordal(&rest.without_isolated().graph));
    }
    Ok(r)
}

/// `max_x reg (I(G) : x)` over non-isolated vertices; 0 without edges.
pub fn max_local_regularity(g: &Graph, config: &EngineConfig) -> Result<u32, EngineError> {
    let mut best = 0;
    for x in g.vertices().difference(g.isolated_vertices()) {
        best = best.max(local_regularity(g, x, config)?);
    }
    Ok(best)
}

/// `reg (I(G) : x) <= r` for every non-isolated vertex `x`.
pub fn is_locally_of_regularity_at_most(
    g: &Graph,
    r: u32,
    config: &EngineConfig,
) -> Result<bool, EngineError> {
    Ok(max_local_regularity(g, config)? <= r)
}

pub fn is_locally_linear(g: &Graph, config: &EngineConfig) -> Result<bool, EngineError> {
    is_locally_of_regularity_at_most(g, 2, config)
}

/// Every invariant the theorem suites quantify over, for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub beta: usize,
    pub nu: usize,
    pub gap_free: bool,
    pub claw_free: bool,
    pub cricket_free: bool,
    pub chordal: bool,
    pub co_chordal: bool,
    pub cameron_walker: bool,
    pub locally_linear: bool,
    pub local_reg_max: u32,
}

impl InvariantRecord {
    pub fn compute(g: &Graph, config: &EngineConfig) -> Result<InvariantRecord, EngineError> {
        let beta = matching_number(g);
        let nu = induced_matching_number(g);
        let local_reg_max = max_local_regularity(g, config)?;
        Ok(InvariantRecord {
            graph6: emit_graph6(g),
            n: g.n(),
            edges: g.edge_count(),
            beta,
            nu,
            gap_free: is_gap_free(g),
            claw_free: is_claw_free(g),
            cricket_free: is_cricket_free(g),
            chordal: is_chordal(g),
            co_chordal: is_co_chordal(g),
            cameron_walker: beta == nu,
            locally_linear: local_reg_max <= 2,
            local_reg_max,
        })
    }
}

/// Checks the hypotheses of the hierarchy bound for a numerical function
/// `f` on a family of graphs: `reg I(G) <= f(G)`, and for each
/// non-isolated `w`, `f(G - w) <= f(G)` and
/// `f(G - N[w]) <= max(f(G) - 1, 2)`. Deletions that leave the family
/// (up to isomorphism) are noted, not counted as violations.
pub fn check_hierarchy_function(
    suite: &str,
    family: &[Graph],
    f: &(dyn Fn(&Graph) -> u32 + Sync),
    config: &EngineConfig,
) -> Result<SuiteReport, EngineError> {
    let mut report = SuiteReport::new(suite);
    let members: HashSet<_> = family.iter().map(canonical_form).collect();
    for g in family {
        report.graphs_tested += 1;
        let fg = f(g) as i64;
        let code = emit_graph6(g);
        if g.has_edges() {
            let reg = regularity(&edge_ideal(g), config)? as i64;
            report.check(reg <= fg, || Violation {
                graph6: code.clone(),
                s: None,
                lhs: reg,
                rhs: fg,
                context: "reg I(G) <= f(G)".into(),
            });
        }
        let isolated = g.isolated_vertices();
        for w in g.vertices() {
            let minus = g.delete_vertices(VertexSet::singleton(w)).unwrap().graph;
            let minus_closed = g.delete_closed_neighborhood(w).unwrap().graph;
            for h in [&minus, &minus_closed] {
                if !members.contains(&canonical_form(h)) {
                    report.note(format!(
                        "family not closed: {} missing {}",
                        code,
                        emit_graph6(h)
                    ));
                }
            }
            if isolated.contains(w) {
                continue;
            }
            let a = f(&minus) as i64;
            report.check(a <= fg, || Violation {
                graph6: code.clone(),
                s: None,
                lhs: a,
                rhs: fg,
                context: format!("f(G - {w}) <= f(G)"),
            });
            let b = f(&minus_closed) as i64;
            let cap = (fg - 1).max(2);
            report.check(b <= cap, || Violation {
                graph6: code.clone(),
                s: None,
                lhs: b,
                rhs: cap,
                context: format!("f(G - N[{w}]) <= max(f(G) - 1, 2)"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{enumerate_graphs, enumerate_range, subsets_of_size};

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn two_k2() -> Graph {
        Graph::complete(2).disjoint_union(&Graph::complete(2))
    }

    /// Largest set of pairwise disjoint edges over all edge subsets.
    fn brute_matching(g: &Graph, induced: bool) -> usize {
        let edges = g.edges();
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let m = Matching {
                edges: VertexSet(mask).iter().map(|i| edges[i]).collect(),
            };
            let ok = if induced {
                m.is_induced_in(g)
            } else {
                m.is_matching()
            };
            if ok {
                best = best.max(m.len());
            }
        }
        best
    }

    /// Some vertex subset of size >= 4 induces a cycle.
    fn has_long_induced_cycle(g: &Graph) -> bool {
        (4..=g.n()).any(|k| {
            subsets_of_size(g.n(), k).any(|w| {
                let h = g.induced_subgraph(w).unwrap().graph;
                h.is_connected() && (0..k).all(|v| h.degree(v) == 2)
            })
        })
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&Graph::cycle(5)), 2);
        assert_eq!(matching_number(&Graph::path(4)), 2);
        assert_eq!(matching_number(&Graph::empty(4)), 0);
        let m = maximum_matching(&Graph::cycle(5));
        assert!(m.is_matching());
    }

    #[test]
    fn induced_matching_examples() {
        assert_eq!(induced_matching_number(&Graph::path(4)), 1);
        let bad = Matching {
            edges: vec![Edge::new(0, 1).unwrap(), Edge::new(2, 3).unwrap()],
        };
        assert!(!bad.is_induced_in(&Graph::path(4)));
        assert_eq!(induced_matching_number(&two_k2()), 2);
        assert_eq!(induced_matching_number(&Graph::cycle(5)), 1);
        assert!(maximum_induced_matching(&Graph::path(6)).is_induced_in(&Graph::path(6)));
    }

    #[test]
    fn matchings_agree_with_brute_force() {
        for n in 0..=6 {
            for g in enumerate_graphs(n, false).unwrap() {
                assert_eq!(matching_number(&g), brute_matching(&g, false), "{g:?}");
                assert_eq!(
                    induced_matching_number(&g),
                    brute_matching(&g, true),
                    "{g:?}"
                );
                assert!(maximum_induced_matching(&g).is_induced_in(&g));
            }
        }
    }

    #[test]
    fn gap_free_examples() {
        assert!(is_gap_free(&Graph::cycle(4)));
        assert!(!is_gap_free(&Graph::path(5)));
        assert!(is_gap_free(&Graph::complete(5)));
    }

    #[test]
    fn chordal_examples() {
        assert!(is_chordal(&two_k2()));
        assert!(!is_chordal(&Graph::cycle(4)));
        assert!(!is_chordal(&Graph::cycle(5).complement()));
        assert!(is_co_chordal(&Graph::cycle(4)));
        assert!(!is_co_chordal(&Graph::cycle(5)));
        assert!(is_co_chordal(&Graph::complete(4)));
    }

    #[test]
    fn chordality_matches_induced_cycle_search() {
        for n in 0..=7 {
            for g in enumerate_graphs(n, false).unwrap() {
                assert_eq!(is_chordal(&g), !has_long_induced_cycle(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn cameron_walker_examples() {
        assert!(is_cameron_walker(&Graph::star(3)));
        assert!(!is_cameron_walker(&Graph::path(4)));
        assert!(is_cameron_walker(&two_k2()));
    }

    #[test]
    fn local_regularity_examples() {
        assert_eq!(local_regularity(&Graph::cycle(5), 0, &cfg()).unwrap(), 2);
        for x in 0..3 {
            assert_eq!(local_regularity(&Graph::complete(3), x, &cfg()).unwrap(), 1);
        }
        assert_eq!(local_regularity(&Graph::empty(2), 0, &cfg()).unwrap(), 0);
        assert!(local_regularity(&Graph::cycle(5), 9, &cfg()).is_err());
    }

    #[test]
    fn join_of_gap_and_clique_is_locally_linear() {
        let g = two_k2().join(&Graph::complete(6));
        for x in 0..4 {
            assert_eq!(local_regularity(&g, x, &cfg()).unwrap(), 2);
        }
        for x in 4..10 {
            assert_eq!(local_regularity(&g, x, &cfg()).unwrap(), 1);
        }
        assert_eq!(max_local_regularity(&g, &cfg()).unwrap(), 2);
        assert!(!is_gap_free(&g));
        assert_eq!(regularity(&edge_ideal(&g), &cfg()).unwrap(), 3);
    }

    #[test]
    fn locally_linear_examples() {
        // the gap itself: locally linear, not gap-free, regularity 3
        let g = two_k2();
        assert!(is_locally_linear(&g, &cfg()).unwrap());
        assert_eq!(regularity(&edge_ideal(&g), &cfg()).unwrap(), 3);
        assert!(is_locally_of_regularity_at_most(&Graph::empty(4), 1, &cfg()).unwrap());
        // C_5 is gap-free and cricket-free
        assert!(is_locally_linear(&Graph::cycle(5), &cfg()).unwrap());
    }

    #[test]
    fn claw_free_graphs_are_cricket_free() {
        for g in enumerate_graphs(6, false).unwrap() {
            if is_claw_free(&g) {
                assert!(is_cricket_free(&g));
            }
        }
    }

    #[test]
    fn hierarchy_matching_plus_one() {
        let family = enumerate_range(0, 5, 8).unwrap();
        let f = |g: &Graph| matching_number(g) as u32 + 1;
        let r = check_hierarchy_function("h", &family, &f, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.notes.is_empty(), "{:?}", r.notes);
        assert!(r.checks > 100);
    }

    #[test]
    fn hierarchy_regularity_on_locally_linear() {
        let family: Vec<Graph> = enumerate_range(0, 5, 8)
            .unwrap()
            .into_iter()
            .filter(|g| is_locally_linear(g, &cfg()).unwrap())
            .collect();
        let f = |g: &Graph| {
            if g.has_edges() {
                regularity(&edge_ideal(g), &cfg()).unwrap()
            } else {
                0
            }
        };
        let r = check_hierarchy_function("h", &family, &f, &cfg()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.notes.is_empty(), "{:?}", r.notes);
    }

    #[test]
    fn hierarchy_empty_family() {
        let r = check_hierarchy_function("h", &[], &|_: &Graph| 0, &cfg()).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks, 0);
    }

    #[test]
    fn invariant_record_is_flat_json() {
        let rec = InvariantRecord::compute(&Graph::cycle(5), &cfg()).unwrap();
        assert_eq!(rec.beta, 2);
        assert_eq!(rec.nu, 1);
        assert!(rec.gap_free && rec.locally_linear && !rec.co_chordal);
        let v: serde_json::Value = serde_json::to_value(&rec).unwrap();
        assert!(v
            .as_object()
            .unwrap()
            .values()
            .all(|x| !x.is_object() && !x.is_array()));
    }
}
