//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one `u32` bitmask per vertex, which keeps
//! neighborhood algebra (closed neighborhoods, induced subgraphs,
//! independence tests) down to a handful of bit operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 32;

/// An edge `{u, v}` stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_iter([self.u, self.v])
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.u, self.v)
    }
}

/// A subset of `{0, .., MAX_VERTICES - 1}` with bitset semantics.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, .., n - 1}`.
    pub fn full(n: usize) -> VertexSet {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// The result of restricting a graph to a vertex subset: the compact
/// relabeled graph plus the map from new indices back to old ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `old_of_new[i]` is the original index of new vertex `i`.
    pub old_of_new: Vec<usize>,
}

impl Subgraph {
    pub fn new_of_old(&self, old: usize) -> Option<usize> {
        self.old_of_new.iter().position(|&o| o == old)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "graph too large: {n} vertices");
        Graph {
            n,
            adj: vec![0; n],
            labels: None,
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = Edge::new(a, b)?;
            if g.has_edge(e.u, e.v) {
                return Err(GraphError::DuplicateEdge(e.u, e.v));
            }
            g.add_edge(e.u, e.v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Graph, GraphError> {
        let pairs: Vec<_> = edges.iter().map(|e| (e.u, e.v)).collect();
        Graph::from_edge_list(n, &pairs)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).0 & !(1 << v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::empty(k + 1);
        for i in 1..=k {
            g.add_edge(0, i);
        }
        g
    }

    /// The cricket: a triangle `{2,3,4}` with two pendant edges at vertex 2.
    pub fn cricket() -> Graph {
        Graph::from_edge_list(5, &[(0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_VERTICES);
        let mut g = Graph::empty(n);
        for e in self.edges() {
            g.add_edge(e.u, e.v);
        }
        for e in other.edges() {
            g.add_edge(e.u + self.n, e.v + self.n);
        }
        g
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for a in 0..self.n {
            for b in 0..other.n {
                g.add_edge(a, self.n + b);
            }
        }
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !((2u32 << u).wrapping_sub(1))) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|&a| a != 0)
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Whether `s` contains no edge.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.neighbors(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == self.vertices()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, w: VertexSet) -> Result<(), GraphError> {
        match w.difference(self.vertices()).first() {
            Some(v) => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices().0;
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & full & !(1 << v))
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// `G_W`, relabeled to `0..|W|` in increasing order of the old indices.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<Subgraph, GraphError> {
        self.check_set(w)?;
        let old_of_new: Vec<usize> = w.iter().collect();
        let mut g = Graph::empty(old_of_new.len());
        for (i, &a) in old_of_new.iter().enumerate() {
            for (j, &b) in old_of_new.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.labels = Some(old_of_new.iter().map(|&o| labels[o].clone()).collect());
        }
        Ok(Subgraph {
            graph: g,
            old_of_new,
        })
    }

    /// `G - W`.
    pub fn delete_vertices(&self, w: VertexSet) -> Result<Subgraph, GraphError> {
        self.check_set(w)?;
        self.induced_subgraph(self.vertices().difference(w))
    }

    /// `G - N_G[x]`.
    pub fn delete_closed_neighborhood(&self, x: usize) -> Result<Subgraph, GraphError> {
        let nb = self.closed_neighborhood(&x)?;
        self.delete_vertices(nb)
    }

    /// Union of the closed neighborhoods of every vertex of `target`.
    pub fn closed_neighborhood<T: NeighborhoodTarget + ?Sized>(
        &self,
        target: &T,
    ) -> Result<VertexSet, GraphError> {
        let s = target.vertex_set();
        self.check_set(s)?;
        Ok(s.iter().fold(s, |acc, v| acc.union(self.neighbors(v))))
    }

    /// Open neighborhood of a single vertex, checked.
    pub fn open_neighborhood(&self, x: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(x)?;
        Ok(self.neighbors(x))
    }

    /// Applies `perm` (new index of old vertex `v` is `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in self.edges() {
            g.add_edge(perm[e.u], perm[e.v]);
        }
        g
    }

    /// Drops every isolated vertex.
    pub fn without_isolated(&self) -> Subgraph {
        self.delete_vertices(self.isolated_vertices()).unwrap()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Anything whose closed neighborhood makes sense: a vertex, an edge,
/// a vertex set or a collection of edges.
pub trait NeighborhoodTarget {
    fn vertex_set(&self) -> VertexSet;
}

impl NeighborhoodTarget for usize {
    fn vertex_set(&self) -> VertexSet {
        if *self >= 32 {
            // forces the range check to fail
            VertexSet(u32::MAX)
        } else {
            VertexSet::singleton(*self)
        }
    }
}

impl NeighborhoodTarget for Edge {
    fn vertex_set(&self) -> VertexSet {
        self.vertices()
    }
}

impl NeighborhoodTarget for VertexSet {
    fn vertex_set(&self) -> VertexSet {
        *self
    }
}

impl NeighborhoodTarget for [Edge] {
    fn vertex_set(&self) -> VertexSet {
        self.iter()
            .fold(VertexSet::EMPTY, |acc, e| acc.union(e.vertices()))
    }
}

/// JSON edge-list form: `{"n": 4, "edges": [[0,1],[1,2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson {
            n: g.n(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
        }
    }
}

impl TryFrom<EdgeListJson> for Graph {
    type Error = GraphError;

    fn try_from(j: EdgeListJson) -> Result<Graph, GraphError> {
        let pairs: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edge_list(j.n, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edge_list_examples() {
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c4, Graph::cycle(4));
        let cricket = Graph::from_edge_list(5, &[(0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(cricket, Graph::cricket());
        assert_eq!(cricket.edge_count(), 5);
        let e3 = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(e3.n(), 3);
        assert!(!e3.has_edges());
    }

    #[test]
    fn from_edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(GraphError::Loop(1))
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn complement_examples() {
        let c4c = Graph::cycle(4).complement();
        assert_eq!(c4c.edges(), vec![Edge { u: 0, v: 2 }, Edge { u: 1, v: 3 }]);
        assert!(!Graph::complete(5).complement().has_edges());
        assert_eq!(Graph::cycle(5).complement().complement(), Graph::cycle(5));
    }

    #[test]
    fn induced_subgraph_examples() {
        let sub = Graph::cycle(5)
            .induced_subgraph(VertexSet::from_iter([0, 1, 2]))
            .unwrap();
        assert_eq!(sub.graph, Graph::path(3));
        let g = Graph::cycle(5);
        assert_eq!(g.induced_subgraph(g.vertices()).unwrap().graph, g);
        // the cricket restricted to its two pendant vertices and the center
        let sub = Graph::cricket()
            .induced_subgraph(VertexSet::from_iter([0, 1, 2]))
            .unwrap();
        assert_eq!(
            sub.graph.edges(),
            vec![Edge { u: 0, v: 2 }, Edge { u: 1, v: 2 }]
        );
        assert!(Graph::path(3)
            .induced_subgraph(VertexSet::from_iter([5]))
            .is_err());
    }

    #[test]
    fn delete_closed_neighborhood_examples() {
        let sub = Graph::cycle(5).delete_closed_neighborhood(0).unwrap();
        assert_eq!(sub.old_of_new, vec![2, 3]);
        assert_eq!(sub.graph.edges(), vec![Edge { u: 0, v: 1 }]);
        assert_eq!(
            Graph::complete(4)
                .delete_closed_neighborhood(2)
                .unwrap()
                .graph
                .n(),
            0
        );
        let sub = Graph::star(3).delete_closed_neighborhood(0).unwrap();
        assert_eq!(sub.graph.n(), 0);
        let sub = Graph::star(3)
            .delete_vertices(VertexSet::singleton(0))
            .unwrap();
        assert_eq!(sub.graph, Graph::empty(3));
        assert!(Graph::cycle(5).delete_closed_neighborhood(7).is_err());
    }

    #[test]
    fn closed_neighborhood_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(
            c5.closed_neighborhood(&0).unwrap(),
            VertexSet::from_iter([4, 0, 1])
        );
        let p5 = Graph::path(5);
        let e = Edge::new(1, 2).unwrap();
        assert_eq!(
            p5.closed_neighborhood(&e).unwrap(),
            VertexSet::from_iter([0, 1, 2, 3])
        );
        let c4 = Graph::cycle(4);
        assert_eq!(
            c4.closed_neighborhood(&VertexSet::from_iter([0, 2]))
                .unwrap(),
            c4.vertices()
        );
        let edges = [Edge::new(0, 1).unwrap(), Edge::new(3, 4).unwrap()];
        assert_eq!(p5.closed_neighborhood(&edges[..]).unwrap(), p5.vertices());
        assert!(c5.closed_neighborhood(&9).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cricket();
        let text = serde_json::to_string(&EdgeListJson::from(&g)).unwrap();
        assert_eq!(text, r#"{"n":5,"edges":[[0,2],[1,2],[2,3],[2,4],[3,4]]}"#);
        let back: EdgeListJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Graph::try_from(back).unwrap(), g);
    }

    #[test]
    fn join_and_union() {
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(two_k2.edge_count(), 2);
        let j = two_k2.join(&Graph::complete(6));
        assert_eq!(j.n(), 10);
        assert_eq!(j.edge_count(), 2 + 15 + 24);
    }
}
