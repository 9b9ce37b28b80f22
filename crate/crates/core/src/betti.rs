//! Graded Betti numbers and Castelnuovo–Mumford regularity of monomial ideals.
//!
//! The primary method reads `β_{i,b}(I) = dim H̃_{i-1}(K^b(I))` off the upper
//! Koszul complex `K^b(I) = {F ⊆ supp(b) : x^{b-F} ∈ I}` at every multidegree
//! `b` of the lcm lattice. Membership in `I` and lattice membership are
//! tabulated once over the box below the lcm of all generators.
//!
//! [`hochster_oracle`] is an independent second route: polarize, then apply
//! Hochster's formula `β_{i,σ}(I) = dim H̃_{|σ|-i-2}(Δ_σ)` to every subset
//! `σ` of the polarized variables.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::EngineError;
use crate::graph::Graph;
use crate::homology::{homology_of_predicate, FieldSpec, HomologyConfig, RankFault};
use crate::monomial::{edge_ideal, MonomialIdeal};

/// Budgets and coefficients for one engine run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    pub homology: HomologyConfig,
    /// Largest number of multidegrees in the box below the generator lcm.
    pub max_box: u64,
    /// Largest polarized variable count accepted by the oracle.
    pub max_oracle_vars: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            homology: HomologyConfig::default(),
            max_box: 1 << 24,
            max_oracle_vars: 22,
        }
    }
}

impl EngineConfig {
    pub fn with_field(field: FieldSpec) -> Self {
        EngineConfig {
            homology: HomologyConfig::with_field(field),
            ..Default::default()
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.homology.field
    }

    pub fn with_fault(mut self, fault: Option<RankFault>) -> Self {
        self.homology.fault = fault;
        self
    }
}

/// `β_{i,j}` of an ideal (not of its quotient ring).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    entries: BTreeMap<(u32, u32), usize>,
}

impl BettiTable {
    pub fn new(field: FieldSpec) -> BettiTable {
        BettiTable {
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: u32, j: u32, rank: usize) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    pub fn get(&self, i: u32, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, β_{i,j})` in increasing `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`, or `None` for the zero ideal.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    fn merge(mut self, other: BettiTable) -> BettiTable {
        for (i, j, r) in other.entries() {
            self.add(i, j, r);
        }
        self
    }
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    field: FieldSpec,
    betti: Vec<[u64; 3]>,
    reg: Option<u32>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BettiJson {
            field: self.field,
            betti: self
                .entries()
                .map(|(i, j, r)| [i as u64, j as u64, r as u64])
                .collect(),
            reg: self.regularity(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<BettiTable, D::Error> {
        let j = BettiJson::deserialize(d)?;
        let mut t = BettiTable::new(j.field);
        for [i, deg, r] in j.betti {
            t.add(i as u32, deg as u32, r as usize);
        }
        Ok(t)
    }
}

/// Mixed-radix box `∏ [0, a_k]` over the variables that occur in `I`.
struct MultidegreeBox {
    /// maximum exponent per occurring variable
    top: Vec<u8>,
    stride: Vec<usize>,
    size: usize,
}

impl MultidegreeBox {
    fn new(
        ideal: &MonomialIdeal,
        max_box: u64,
    ) -> Result<(MultidegreeBox, Vec<usize>), EngineError> {
        let lcm = ideal.lcm_of_generators();
        let occurring: Vec<usize> = (0..ideal.nvars())
            .filter(|&k| lcm.exponents()[k] > 0)
            .collect();
        let top: Vec<u8> = occurring.iter().map(|&k| lcm.exponents()[k]).collect();
        let mut stride = Vec::with_capacity(top.len());
        let mut size: u64 = 1;
        for &t in &top {
            stride.push(size as usize);
            size = size.saturating_mul(t as u64 + 1);
            if size > max_box {
                return Err(EngineError::Budget {
                    what: "lcm box",
                    value: size,
                    limit: max_box,
                });
            }
        }
        Ok((
            MultidegreeBox {
                top,
                stride,
                size: size as usize,
            },
            occurring,
        ))
    }

    fn index(&self, exps: &[u8]) -> usize {
        exps.iter()
            .zip(&self.stride)
            .map(|(&e, &s)| e as usize * s)
            .sum()
    }
}

/// Graded Betti numbers via upper Koszul simplicial complexes.
#[allow(clippy::needless_range_loop)]
pub fn graded_betti(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
) -> Result<BettiTable, EngineError> {
    if ideal.is_zero() {
        return Err(EngineError::ZeroIdeal);
    }
    let (bx, occurring) = MultidegreeBox::new(ideal, config.max_box)?;
    let k = bx.top.len();
    if k > 32 {
        return Err(EngineError::Budget {
            what: "occurring variables",
            value: k as u64,
            limit: 32,
        });
    }
    let gens: HashSet<usize> = ideal
        .generators()
        .iter()
        .map(|g| {
            let local: Vec<u8> = occurring.iter().map(|&v| g.exponents()[v]).collect();
            bx.index(&local)
        })
        .collect();

    // in_ideal[b]: x^b ∈ I. tight[b]: coordinates c such that some
    // generator g | x^b has g_c = b_c. b is in the lcm lattice iff tight
    // covers its whole support.
    let mut in_ideal = vec![false; bx.size];
    let mut tight = vec![0u32; bx.size];
    let mut support = vec![0u32; bx.size];
    let mut digits = vec![0u8; k];
    for idx in 0..bx.size {
        if idx > 0 {
            for c in 0..k {
                if digits[c] < bx.top[c] {
                    digits[c] += 1;
                    break;
                }
                digits[c] = 0;
            }
        }
        let mut supp = 0u32;
        let mut member = false;
        let mut t = 0u32;
        for c in 0..k {
            if digits[c] > 0 {
                supp |= 1 << c;
                let prev = idx - bx.stride[c];
                member |= in_ideal[prev];
                t |= tight[prev] & !(1 << c);
            }
        }
        if gens.contains(&idx) {
            member = true;
            t |= supp;
        }
        in_ideal[idx] = member;
        tight[idx] = t;
        support[idx] = supp;
    }

    let lattice: Vec<usize> = (0..bx.size)
        .filter(|&b| in_ideal[b] && tight[b] == support[b])
        .collect();

    let hom = config.homology;
    lattice
        .par_iter()
        .map(|&b| -> Result<BettiTable, EngineError> {
            let supp = support[b];
            let degree: u32 = {
                let mut d = 0u32;
                let mut rest = b;
                for c in (0..k).rev() {
                    d += (rest / bx.stride[c]) as u32;
                    rest %= bx.stride[c];
                }
                d
            };
            let ranks = homology_of_predicate(
                supp,
                |face| {
                    let mut idx = b;
                    let mut f = face;
                    while f != 0 {
                        let c = f.trailing_zeros() as usize;
                        idx -= bx.stride[c];
                        f &= f - 1;
                    }
                    in_ideal[idx]
                },
                &hom,
            )?;
            let mut t = BettiTable::new(hom.field);
            // ranks[i] = dim H̃_{i-1}(K^b) = β_{i,b}
            for (i, &r) in ranks.iter().enumerate() {
                t.add(i as u32, degree, r);
            }
            Ok(t)
        })
        .try_reduce(|| BettiTable::new(hom.field), |a, b| Ok(a.merge(b)))
}

/// Betti numbers through polarization and Hochster's formula, summing over
/// every subset of the polarized variables.
pub fn hochster_oracle(
    ideal: &MonomialIdeal,
    config: &EngineConfig,
) -> Result<BettiTable, EngineError> {
    if ideal.is_zero() {
        return Err(EngineError::ZeroIdeal);
    }
    let (pol, _) = ideal.polarize();
    let n = pol.nvars();
    if n > config.max_oracle_vars || n > 30 {
        return Err(EngineError::Budget {
            what: "polarized variables",
            value: n as u64,
            limit: config.max_oracle_vars as u64,
        });
    }
    let size = 1usize << n;
    // contains_gen[S]: S contains the support of a generator (S is a non-face)
    let mut contains_gen = vec![false; size];
    for g in pol.generators() {
        contains_gen[g.support().0 as usize] = true;
    }
    for s in 0..size {
        if contains_gen[s] {
            continue;
        }
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if contains_gen[s ^ bit] {
                contains_gen[s] = true;
                break;
            }
            rest ^= bit;
        }
    }
    let hom = config.homology;
    (0..size)
        .into_par_iter()
        .map(|sigma| -> Result<BettiTable, EngineError> {
            let mut t = BettiTable::new(hom.field);
            let card = (sigma as u32).count_ones();
            let ranks = homology_of_predicate(sigma as u32, |f| !contains_gen[f as usize], &hom)?;
            // ranks[k] = dim H̃_{k-1}(Δ_σ) contributes to i = |σ| - k - 1
            for (k, &r) in ranks.iter().enumerate() {
                if r > 0 {
                    let i = card as i64 - k as i64 - 1;
                    if i >= 0 {
                        t.add(i as u32, card, r);
                    }
                }
            }
            Ok(t)
        })
        .try_reduce(|| BettiTable::new(hom.field), |a, b| Ok(a.merge(b)))
}

pub fn regularity(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<u32, EngineError> {
    graded_betti(ideal, config)?
        .regularity()
        .ok_or(EngineError::ZeroIdeal)
}

/// `reg I(G)^s`.
pub fn regularity_of_power(g: &Graph, s: u32, config: &EngineConfig) -> Result<u32, EngineError> {
    let p = edge_ideal(g).power(s)?;
    regularity(&p, config)
}
