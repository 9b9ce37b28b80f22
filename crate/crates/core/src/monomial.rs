//! Monomials and monomial ideals with dense exponent vectors.
//!
//! Every ideal carries its variable universe explicitly so that colon
//! ideals, polarizations and graphs built from them keep stable names.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::graph::{Edge, Graph, VertexSet};

/// A polynomial-ring variable: a graph vertex plus a polarization copy index.
/// Copy 1 is the original variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub base: u32,
    pub copy: u32,
}

impl Variable {
    pub fn original(base: usize) -> Variable {
        Variable {
            base: base as u32,
            copy: 1,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 1 {
            write!(f, "x{}", self.base)
        } else {
            write!(f, "x{}_{}", self.base, self.copy)
        }
    }
}

impl std::str::FromStr for Variable {
    type Err = String;

    fn from_str(s: &str) -> Result<Variable, String> {
        let body = s
            .strip_prefix('x')
            .ok_or_else(|| format!("bad variable {s:?}"))?;
        let (base, copy) = match body.split_once('_') {
            Some((b, c)) => (b, c.parse().map_err(|_| format!("bad variable {s:?}"))?),
            None => (body, 1),
        };
        let base = base.parse().map_err(|_| format!("bad variable {s:?}"))?;
        Ok(Variable { base, copy })
    }
}

/// The variables `x0 .. x{n-1}`.
pub fn standard_universe(n: usize) -> Vec<Variable> {
    (0..n).map(Variable::original).collect()
}

/// Exponent vector over an ambient universe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u8>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    /// Product of the variables in `s`.
    pub fn squarefree(nvars: usize, s: VertexSet) -> Monomial {
        let mut m = Monomial::one(nvars);
        for v in s {
            m.0[v] = 1;
        }
        m
    }

    pub fn of_edge(nvars: usize, e: Edge) -> Monomial {
        Monomial::squarefree(nvars, e.vertices())
    }

    /// Product `e_1 ... e_s` of an edge list.
    pub fn of_edges(nvars: usize, edges: &[Edge]) -> Monomial {
        edges.iter().fold(Monomial::one(nvars), |acc, e| {
            acc.mul(&Monomial::of_edge(nvars, *e))
        })
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - a.min(b))
                .collect(),
        )
    }

    /// Zero-extends to a larger universe.
    pub fn extended(&self, nvars: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Monomial(e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with `x0 > x1 > ...`: lower degree first, then
    /// larger leading exponents first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A monomial ideal given by its minimal generators in graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: Vec<Variable>,
    gens: Vec<Monomial>,
}

/// Reduces a generating list to its divisibility antichain, sorted.
pub fn minimalize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let mut uniq: Vec<Monomial> = gens
        .into_iter()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    uniq.sort();
    let mut kept: Vec<Monomial> = Vec::with_capacity(uniq.len());
    for m in uniq {
        // sorted by degree, so only earlier elements can divide m
        if !kept
            .iter()
            .any(|k| k.degree() < m.degree() && k.divides(&m))
        {
            kept.push(m);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(vars: Vec<Variable>, gens: Vec<Monomial>) -> MonomialIdeal {
        debug_assert!(gens.iter().all(|g| g.nvars() == vars.len()));
        MonomialIdeal {
            vars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(vars: Vec<Variable>) -> MonomialIdeal {
        MonomialIdeal {
            vars,
            gens: Vec::new(),
        }
    }

    /// The ideal generated by the listed variables.
    pub fn variables(vars: Vec<Variable>, which: VertexSet) -> MonomialIdeal {
        let n = vars.len();
        let gens = which.iter().map(|i| Monomial::var(n, i)).collect();
        MonomialIdeal::new(vars, gens)
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Componentwise maximum exponent of each variable over the generators.
    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm(g))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn check_universe(&self, other: &MonomialIdeal) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            Err(AlgebraError::UniverseMismatch)
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal::new(self.vars.clone(), gens))
    }

    pub fn add_generator(&self, m: Monomial) -> MonomialIdeal {
        let mut gens = self.gens.clone();
        gens.push(m);
        MonomialIdeal::new(self.vars.clone(), gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ok(MonomialIdeal::new(self.vars.clone(), gens))
    }

    /// Pairwise lcms of generators.
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_universe(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(MonomialIdeal::new(self.vars.clone(), gens))
    }

    /// `I^s`, `s >= 1`.
    pub fn power(&self, s: u32) -> Result<MonomialIdeal, AlgebraError> {
        if s == 0 {
            return Err(AlgebraError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `(I : m)`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.quotient_by_gcd(m)).collect();
        MonomialIdeal::new(self.vars.clone(), gens)
    }

    /// Replaces `x_v^k` by `x_{v,1} ... x_{v,k}`. The polarized universe
    /// lists every copy-1 variable in the original order, then copy 2 of
    /// each variable that needs it, then copy 3, and so on. Returns the
    /// ideal and, per polarized variable, the index of its original variable.
    pub fn polarize(&self) -> (MonomialIdeal, Vec<usize>) {
        let maxes = self.lcm_of_generators();
        let top = maxes.exponents().iter().copied().max().unwrap_or(0).max(1);
        // slot[i][c-1] = polarized index of copy c of variable i
        let mut slot = vec![Vec::new(); self.nvars()];
        let mut vars = Vec::new();
        let mut origin = Vec::new();
        for copy in 1..=top {
            for (i, v) in self.vars.iter().enumerate() {
                if copy == 1 || maxes.exponents()[i] >= copy {
                    slot[i].push(vars.len());
                    vars.push(Variable {
                        base: v.base,
                        copy: v.copy + copy as u32 - 1,
                    });
                    origin.push(i);
                }
            }
        }
        let n = vars.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u8; n];
                for (i, &k) in g.exponents().iter().enumerate() {
                    for c in 0..k as usize {
                        e[slot[i][c]] = 1;
                    }
                }
                Monomial(e)
            })
            .collect();
        (MonomialIdeal::new(vars, gens), origin)
    }

    /// The graph whose edge ideal is the polarization of this ideal, which
    /// must be generated in degree 2. Vertex `i` is polarized variable `i`.
    pub fn colon_graph_of(&self) -> Result<Graph, AlgebraError> {
        if let Some(g) = self.gens.iter().find(|g| g.degree() != 2) {
            return Err(AlgebraError::NotQuadratic(g.degree()));
        }
        let (pol, _) = self.polarize();
        let mut edges = Vec::with_capacity(pol.gens.len());
        for g in &pol.gens {
            let s: Vec<usize> = g.support().iter().collect();
            edges.push((s[0], s[1]));
        }
        Ok(Graph::from_edge_list(pol.nvars(), &edges)?)
    }

    /// Restriction of the universe: keeps the listed variables, in order,
    /// and every generator supported on them.
    pub fn with_universe(&self, vars: Vec<Variable>) -> Result<MonomialIdeal, AlgebraError> {
        let index: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut e = vec![0u8; vars.len()];
            for (i, &k) in g.exponents().iter().enumerate() {
                if k > 0 {
                    e[index[i].ok_or(AlgebraError::UniverseMismatch)?] = k;
                }
            }
            gens.push(Monomial(e));
        }
        Ok(MonomialIdeal::new(vars, gens))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, ")")
    }
}

/// `{"vars": ["x0", ..], "gens": [[exponents], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<u8>>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        IdealJson {
            vars: i.vars.iter().map(|v| v.to_string()).collect(),
            gens: i.gens.iter().map(|g| g.0.clone()).collect(),
        }
    }
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = String;

    fn try_from(j: IdealJson) -> Result<MonomialIdeal, String> {
        let vars = j
            .vars
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Variable>, _>>()?;
        if let Some(g) = j.gens.iter().find(|g| g.len() != vars.len()) {
            return Err(format!("generator {g:?} has the wrong length"));
        }
        Ok(MonomialIdeal::new(
            vars,
            j.gens.into_iter().map(Monomial).collect(),
        ))
    }
}

/// `I(G)` over the variables `x0 .. x{n-1}`.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    let gens = g.edges().iter().map(|e| Monomial::of_edge(n, *e)).collect();
    MonomialIdeal::new(standard_universe(n), gens)
}

/// All inclusion-minimal vertex covers, as complements of maximal
/// independent sets.
pub fn minimal_vertex_covers(g: &Graph) -> Vec<VertexSet> {
    let full = g.vertices();
    let mut covers: Vec<VertexSet> = maximal_independent_sets(g)
        .into_iter()
        .map(|s| full.difference(s))
        .collect();
    covers.sort();
    covers
}

/// Maximal independent sets by Bron–Kerbosch on the complement.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    fn extend(g: &Graph, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let mut p = p;
        let mut x = x;
        for v in p {
            let keep = g.vertices().difference(g.neighbors(v));
            let mut r2 = r;
            r2.insert(v);
            let mut p2 = p.intersection(keep);
            p2.remove(v);
            let mut x2 = x.intersection(keep);
            x2.remove(v);
            extend(g, r2, p2, x2, out);
            p.remove(v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    extend(
        g,
        VertexSet::EMPTY,
        g.vertices(),
        VertexSet::EMPTY,
        &mut out,
    );
    out.sort();
    out
}

/// `I(G)^2` plus `x_i x_j x_k` for every triangle of `G`.
pub fn symbolic_square(g: &Graph) -> MonomialIdeal {
    let n = g.n();
    let i = edge_ideal(g);
    let mut gens = i.power(2).map(|p| p.gens).unwrap_or_default();
    for a in 0..n {
        for b in g.neighbors(a).iter().filter(|&b| b > a) {
            for c in g
                .neighbors(a)
                .intersection(g.neighbors(b))
                .iter()
                .filter(|&c| c > b)
            {
                gens.push(Monomial::squarefree(n, VertexSet::from_iter([a, b, c])));
            }
        }
    }
    MonomialIdeal::new(i.vars, gens)
}

/// `⋂ P^2` over the minimal primes `P = (x_v : v ∈ C)` of `I(G)`, one per
/// minimal vertex cover `C`.
pub fn symbolic_square_by_covers(g: &Graph) -> MonomialIdeal {
    let vars = standard_universe(g.n());
    let mut acc: Option<MonomialIdeal> = None;
    for cover in minimal_vertex_covers(g) {
        let p = MonomialIdeal::variables(vars.clone(), cover);
        let p2 = p.power(2).expect("s = 2");
        acc = Some(match acc {
            None => p2,
            Some(a) => a.intersection(&p2).expect("same universe"),
        });
    }
    // the edgeless graph has the single cover {} and the zero prime
    acc.unwrap_or_else(|| MonomialIdeal::zero(vars))
}
