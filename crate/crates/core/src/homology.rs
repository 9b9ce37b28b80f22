//! Reduced simplicial homology with exact coefficients.
//!
//! Faces are `u32` bitmasks. Ranks of boundary maps are computed by
//! bit-packed elimination over GF(2), modular elimination over GF(p), and
//! fraction-free (Bareiss) elimination over the integers for characteristic
//! zero, falling back to arbitrary precision when `i128` would overflow.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::EngineError;
use crate::graph::{Graph, VertexSet};
use crate::monomial::maximal_independent_sets;

/// Coefficient field for homology and Tor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    /// The rationals.
    Zero,
    /// GF(p).
    Prime(u32),
    #[default]
    Gf2,
}

impl FieldSpec {
    pub fn new(characteristic: u32) -> Result<FieldSpec, EngineError> {
        match characteristic {
            0 => Ok(FieldSpec::Zero),
            2 => Ok(FieldSpec::Gf2),
            p if is_prime(p) => Ok(FieldSpec::Prime(p)),
            p => Err(EngineError::NotPrime(p)),
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Zero => 0,
            FieldSpec::Gf2 => 2,
            FieldSpec::Prime(p) => p,
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Zero => write!(f, "QQ"),
            _ => write!(f, "GF({})", self.characteristic()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<FieldSpec, String> {
        let t = s.trim();
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        if digits.eq_ignore_ascii_case("QQ") {
            return Ok(FieldSpec::Zero);
        }
        let c: u32 = digits.parse().map_err(|_| format!("bad field {s:?}"))?;
        FieldSpec::new(c).map_err(|e| e.to_string())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<FieldSpec, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A deliberate corruption of the rank routine, used to demonstrate that
/// the verification suites notice broken homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankFault {
    /// Reports one less than the true rank for every nonzero boundary map
    /// out of dimension 1 or higher.
    UnderReport,
}

/// Homology settings shared by every computation in one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomologyConfig {
    pub field: FieldSpec,
    /// Upper limit on the number of faces of one complex.
    pub max_faces: u64,
    pub fault: Option<RankFault>,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        HomologyConfig {
            field: FieldSpec::Gf2,
            max_faces: 1 << 20,
            fault: None,
        }
    }
}

impl HomologyConfig {
    pub fn with_field(field: FieldSpec) -> Self {
        HomologyConfig {
            field,
            ..Default::default()
        }
    }
}

/// A simplicial complex given by its facets. An empty facet list is the
/// void complex; the single facet `{}` is the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub nverts: usize,
    pub facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Keeps only inclusion-maximal facets.
    pub fn from_facets(nverts: usize, faces: Vec<VertexSet>) -> SimplicialComplex {
        let mut facets: Vec<VertexSet> = Vec::new();
        let mut sorted = faces;
        sorted.sort_by_key(|f| std::cmp::Reverse(f.len()));
        for f in sorted {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        facets.sort();
        SimplicialComplex { nverts, facets }
    }

    pub fn void(nverts: usize) -> SimplicialComplex {
        SimplicialComplex {
            nverts,
            facets: Vec::new(),
        }
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Every face, grouped by cardinality (index 0 holds the empty face).
    pub fn faces(&self, max_faces: u64) -> Result<Vec<Vec<u32>>, EngineError> {
        let mut seen = std::collections::HashSet::new();
        for f in &self.facets {
            let mut sub = f.0;
            loop {
                seen.insert(sub);
                if seen.len() as u64 > max_faces {
                    return Err(EngineError::Budget {
                        what: "faces",
                        value: seen.len() as u64,
                        limit: max_faces,
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f.0;
            }
        }
        let top = self
            .facets
            .iter()
            .map(|f| f.len())
            .max()
            .map_or(0, |d| d + 1);
        let mut by_size = vec![Vec::new(); top];
        for f in seen {
            by_size[f.count_ones() as usize].push(f);
        }
        for layer in &mut by_size {
            layer.sort_unstable();
        }
        Ok(by_size)
    }
}

/// `Δ(G)`: faces are the independent sets of `G`.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex {
        nverts: g.n(),
        facets: maximal_independent_sets(g),
    }
}

/// `dim H̃_d` for `d = -1, 0, 1, ..`; `ranks[d + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub ranks: Vec<usize>,
}

impl HomologyProfile {
    pub fn rank(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

pub fn reduced_homology(
    c: &SimplicialComplex,
    config: &HomologyConfig,
) -> Result<HomologyProfile, EngineError> {
    let faces = c.faces(config.max_faces)?;
    Ok(HomologyProfile {
        ranks: homology_of_layers(&faces, config),
    })
}

/// Reduced homology of a downward-closed face family given layer by layer
/// (`layers[k]` holds the faces with `k` vertices). The augmentation map
/// to the empty face is included, so `{∅}` has `H̃_{-1} = 1` and the void
/// family has no homology at all.
pub fn homology_of_layers(layers: &[Vec<u32>], config: &HomologyConfig) -> Vec<usize> {
    let top = layers.len();
    if top == 0 {
        return Vec::new();
    }
    // rank of ∂ from layer k to layer k - 1, k >= 1
    let mut boundary_rank = vec![0usize; top + 1];
    for k in 1..top {
        if layers[k].is_empty() || layers[k - 1].is_empty() {
            continue;
        }
        let mut r = boundary_rank_between(&layers[k], &layers[k - 1], config.field);
        if let Some(RankFault::UnderReport) = config.fault {
            // ∂ out of faces of dimension k - 1
            if k >= 2 && r > 0 {
                r -= 1;
            }
        }
        boundary_rank[k] = r;
    }
    (0..top)
        .map(|k| {
            let f = layers[k].len();
            f.saturating_sub(boundary_rank[k] + boundary_rank[k + 1])
        })
        .collect()
}

fn index_of(layer: &[u32]) -> impl Fn(u32) -> usize + '_ {
    move |f| {
        layer
            .binary_search(&f)
            .expect("face family is not downward closed")
    }
}

fn boundary_rank_between(upper: &[u32], lower: &[u32], field: FieldSpec) -> usize {
    let idx = index_of(lower);
    match field {
        FieldSpec::Gf2 => {
            let words = lower.len().div_ceil(64);
            let rows: Vec<Vec<u64>> = upper
                .iter()
                .map(|&f| {
                    let mut row = vec![0u64; words];
                    for v in VertexSet(f) {
                        let j = idx(f & !(1 << v));
                        row[j / 64] |= 1 << (j % 64);
                    }
                    row
                })
                .collect();
            rank_gf2(rows)
        }
        _ => {
            let rows: Vec<Vec<(usize, i64)>> = upper
                .iter()
                .map(|&f| {
                    VertexSet(f)
                        .iter()
                        .enumerate()
                        .map(|(pos, v)| (idx(f & !(1 << v)), if pos % 2 == 0 { 1 } else { -1 }))
                        .collect()
                })
                .collect();
            match field {
                FieldSpec::Prime(p) => rank_mod_p(&rows, lower.len(), p),
                _ => rank_rational(&rows, lower.len()),
            }
        }
    }
}

/// Rank over GF(2) of bit-packed rows.
pub fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let words = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..words * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = std::mem::take(&mut rows[rank]);
        for row in rows.iter_mut().skip(rank + 1) {
            if row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                    *x ^= y;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn dense(rows: &[Vec<(usize, i64)>], ncols: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![0i64; ncols];
            for &(j, v) in r {
                d[j] += v;
            }
            d
        })
        .collect()
}

/// Rank over GF(p), `p` odd prime.
pub fn rank_mod_p(rows: &[Vec<(usize, i64)>], ncols: usize, p: u32) -> usize {
    let p = p as u64;
    let mut m: Vec<Vec<u64>> = dense(rows, ncols)
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect();
    let inv = |a: u64| -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let scale = inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals by fraction-free Gaussian elimination.
pub fn rank_rational(rows: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    let m: Vec<Vec<i128>> = dense(rows, ncols)
        .into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    match bareiss_i128(m) {
        Some(r) => r,
        None => {
            let big = dense(rows, ncols)
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            bareiss_big(big)
        }
    }
}

/// `None` on overflow.
fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank].clone();
        let a = pivot[col];
        for row in m.iter_mut().skip(rank + 1) {
            let b = row[col];
            for j in col..ncols {
                let t = a
                    .checked_mul(row[j])?
                    .checked_sub(b.checked_mul(pivot[j])?)?;
                row[j] = t / prev;
            }
        }
        prev = a;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank].clone();
        let a = pivot[col].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let b = row[col].clone();
            for j in col..ncols {
                let t = &a * &row[j] - &b * &pivot[j];
                row[j] = t / &prev;
            }
        }
        prev = a;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Candidate subsets are enumerated exhaustively, so the universe is capped.
pub const MAX_PREDICATE_VERTICES: usize = 24;

/// Homology of the family `{F ⊆ universe : keep(F)}`, which the caller
/// guarantees to be downward closed. Masks are over the global vertex
/// numbering.
pub fn homology_of_predicate(
    universe: u32,
    keep: impl Fn(u32) -> bool,
    config: &HomologyConfig,
) -> Result<Vec<usize>, EngineError> {
    let k = universe.count_ones() as usize;
    let total = 1u64 << k;
    if k > MAX_PREDICATE_VERTICES {
        return Err(EngineError::Budget {
            what: "complex vertices",
            value: k as u64,
            limit: MAX_PREDICATE_VERTICES as u64,
        });
    }
    let bits: Vec<u32> = VertexSet(universe).iter().map(|v| 1u32 << v).collect();
    let mut layers: Vec<Vec<u32>> = vec![Vec::new(); k + 1];
    let mut count = 0u64;
    for local in 0..total {
        let mut f = 0u32;
        let mut rest = local;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            f |= bits[i];
            rest &= rest - 1;
        }
        if keep(f) {
            count += 1;
            if count > config.max_faces {
                return Err(EngineError::Budget {
                    what: "faces",
                    value: count,
                    limit: config.max_faces,
                });
            }
            layers[f.count_ones() as usize].push(f);
        }
    }
    while layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    Ok(homology_of_layers(&layers, config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(field: FieldSpec) -> HomologyConfig {
        HomologyConfig::with_field(field)
    }

    const FIELDS: [FieldSpec; 3] = [FieldSpec::Gf2, FieldSpec::Zero, FieldSpec::Prime(3)];

    #[test]
    fn hollow_triangle_is_a_circle() {
        let c = SimplicialComplex::from_facets(
            3,
            vec![
                VertexSet::from_iter([0, 1]),
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([0, 2]),
            ],
        );
        for f in FIELDS {
            let h = reduced_homology(&c, &cfg(f)).unwrap();
            assert_eq!(h.rank(1), 1);
            assert_eq!(h.rank(0), 0);
            assert_eq!(h.rank(-1), 0);
        }
    }

    #[test]
    fn two_points() {
        let c = SimplicialComplex::from_facets(
            2,
            vec![VertexSet::singleton(0), VertexSet::singleton(1)],
        );
        let h = reduced_homology(&c, &cfg(FieldSpec::Gf2)).unwrap();
        assert_eq!(h.ranks, vec![0, 1]);
    }

    #[test]
    fn octahedron_boundary() {
        // independence complex of 3K_2 is the octahedron boundary
        let three_k2 = Graph::from_edge_list(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let c = independence_complex(&three_k2);
        assert_eq!(c.facets.len(), 8);
        for f in FIELDS {
            let h = reduced_homology(&c, &cfg(f)).unwrap();
            assert_eq!(h.ranks, vec![0, 0, 0, 1], "{f}");
        }
    }

    #[test]
    fn empty_and_void_conventions() {
        let empty = SimplicialComplex::from_facets(0, vec![VertexSet::EMPTY]);
        assert_eq!(
            reduced_homology(&empty, &cfg(FieldSpec::Gf2))
                .unwrap()
                .rank(-1),
            1
        );
        let void = SimplicialComplex::void(3);
        assert!(reduced_homology(&void, &cfg(FieldSpec::Gf2))
            .unwrap()
            .is_acyclic());
    }

    #[test]
    fn independence_complex_examples() {
        let k3 = independence_complex(&Graph::complete(3));
        assert_eq!(
            k3.facets,
            vec![
                VertexSet::singleton(0),
                VertexSet::singleton(1),
                VertexSet::singleton(2)
            ]
        );
        let e4 = independence_complex(&Graph::empty(4));
        assert_eq!(e4.facets, vec![VertexSet::full(4)]);
        let c4 = independence_complex(&Graph::cycle(4));
        assert_eq!(
            c4.facets,
            vec![VertexSet::from_iter([0, 2]), VertexSet::from_iter([1, 3])]
        );
    }

    #[test]
    fn real_projective_plane_detects_torsion() {
        // 6-vertex triangulation of RP^2: H_1 = Z/2, so GF(2) sees H̃_1 = H̃_2 = 1
        let tris = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(
            6,
            tris.iter().map(|t| VertexSet::from_iter(*t)).collect(),
        );
        let gf2 = reduced_homology(&c, &cfg(FieldSpec::Gf2)).unwrap();
        assert_eq!(gf2.ranks, vec![0, 0, 1, 1]);
        let qq = reduced_homology(&c, &cfg(FieldSpec::Zero)).unwrap();
        assert_eq!(qq.ranks, vec![0, 0, 0, 0]);
        let gf3 = reduced_homology(&c, &cfg(FieldSpec::Prime(3))).unwrap();
        assert_eq!(gf3.ranks, vec![0, 0, 0, 0]);
    }

    #[test]
    fn face_budget_is_enforced() {
        let c = SimplicialComplex::from_facets(12, vec![VertexSet::full(12)]);
        let config = HomologyConfig {
            max_faces: 100,
            ..Default::default()
        };
        assert!(matches!(
            reduced_homology(&c, &config),
            Err(EngineError::Budget { .. })
        ));
    }

    #[test]
    fn rational_rank_matches_big_integer_path() {
        let rows: Vec<Vec<(usize, i64)>> = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| (j, ((i * 7 + j * 3) % 5) as i64 - 2))
                    .collect()
            })
            .collect();
        let small = rank_rational(&rows, 6);
        let big = bareiss_big(
            dense(&rows, 6)
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        );
        assert_eq!(small, big);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("0".parse::<FieldSpec>().unwrap(), FieldSpec::Zero);
        assert_eq!("GF(2)".parse::<FieldSpec>().unwrap(), FieldSpec::Gf2);
        assert_eq!("5".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert!("4".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Zero.to_string(), "QQ");
    }
}
