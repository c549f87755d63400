//! Facet-based simplicial complexes over at most 64 vertices.
//!
//! A complex is stored as its facet antichain; every subset of a facet (and
//! the empty face) is implicitly present. The complex `{∅}` has no facets.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::{full_set, members, CirculantGraph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex {vertex} is outside the ground set 0..{ground}")]
    VertexOutOfRange { vertex: usize, ground: usize },
    #[error("ground set of {0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    GroundTooLarge(usize),
    #[error("{} is not a face of the complex", format_set(*.0))]
    NotAFace(VertexSet),
    #[error("complex is not pure (facet sizes {sizes:?})")]
    NotPure { sizes: Vec<usize> },
    #[error("line {line}: invalid vertex label {token:?}")]
    Parse { line: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground: usize,
    facets: Vec<VertexSet>,
}

/// `(f_{-1}, f_0, ..., f_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

/// `(h_0, ..., h_{d+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i64>);

impl SimplicialComplex {
    /// Builds a complex from generating faces; non-maximal ones are dropped.
    pub fn from_faces(
        ground: usize,
        faces: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self, ComplexError> {
        if ground > MAX_VERTICES {
            return Err(ComplexError::GroundTooLarge(ground));
        }
        let mut faces: Vec<VertexSet> = faces.into_iter().collect();
        let outside = faces.iter().fold(0, |acc, f| acc | f) & !full_set(ground);
        if outside != 0 {
            return Err(ComplexError::VertexOutOfRange {
                vertex: outside.trailing_zeros() as usize,
                ground,
            });
        }
        faces.sort_unstable();
        faces.dedup();
        Ok(Self::from_antichain_candidates(ground, faces))
    }

    pub(crate) fn from_antichain_candidates(ground: usize, mut faces: Vec<VertexSet>) -> Self {
        faces.sort_by_key(|f| std::cmp::Reverse(f.count_ones()));
        let mut kept: Vec<VertexSet> = Vec::with_capacity(faces.len());
        for f in faces {
            if f != 0 && !kept.iter().any(|&k| f & !k == 0) {
                kept.push(f);
            }
        }
        kept.sort_unstable();
        Self {
            ground,
            facets: kept,
        }
    }

    /// Caller guarantees `facets` is a nonempty-set antichain within `ground`.
    pub(crate) fn from_facets_unchecked(ground: usize, mut facets: Vec<VertexSet>) -> Self {
        facets.sort_unstable();
        Self { ground, facets }
    }

    /// The full simplex on `face`.
    pub fn simplex(ground: usize, face: VertexSet) -> Result<Self, ComplexError> {
        Self::from_faces(ground, [face])
    }

    /// The complex `{∅}`.
    pub fn empty(ground: usize) -> Self {
        Self {
            ground,
            facets: Vec::new(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Union of all facets.
    pub fn vertex_support(&self) -> VertexSet {
        self.facets.iter().fold(0, |acc, f| acc | f)
    }

    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.count_ones() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// True iff all facets have the same size; `{∅}` is vacuously pure.
    pub fn is_pure(&self) -> bool {
        self.facets
            .windows(2)
            .all(|w| w[0].count_ones() == w[1].count_ones())
    }

    pub fn require_pure(&self) -> Result<(), ComplexError> {
        if self.is_pure() {
            Ok(())
        } else {
            let mut sizes: Vec<usize> = self.facets.iter().map(|f| f.count_ones() as usize).collect();
            sizes.sort_unstable();
            sizes.dedup();
            Err(ComplexError::NotPure { sizes })
        }
    }

    /// A single facet, or `{∅}`.
    pub fn is_simplex(&self) -> bool {
        self.facets.len() <= 1
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        face == 0 || self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Distinct faces grouped by size: entry `k` holds the faces with `k`
    /// vertices, sorted ascending as bitsets.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let top = (self.dim() + 1) as usize;
        let mut levels: Vec<HashSet<VertexSet>> = vec![HashSet::new(); top + 1];
        for &f in &self.facets {
            levels[f.count_ones() as usize].insert(f);
        }
        levels[0].insert(0);
        for k in (2..=top).rev() {
            let (lower, upper) = levels.split_at_mut(k);
            let below = &mut lower[k - 1];
            for &face in &upper[0] {
                for v in members(face) {
                    below.insert(face & !(1 << v));
                }
            }
        }
        levels
            .into_iter()
            .map(|level| {
                let mut v: Vec<VertexSet> = level.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Every face including `∅`, by size then bitset value.
    pub fn faces(&self) -> Vec<VertexSet> {
        self.faces_by_size().into_iter().flatten().collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_size().iter().map(|l| l.len() as u64).collect())
    }

    pub fn h_vector(&self) -> HVector {
        h_vector(&self.f_vector())
    }

    /// `{G : G ∩ F = ∅, G ∪ F ∈ Δ}` on the same ground set.
    pub fn link(&self, face: VertexSet) -> Result<Self, ComplexError> {
        self.check_in_ground(face)?;
        if !self.contains_face(face) {
            return Err(ComplexError::NotAFace(face));
        }
        // distinct facets containing `face` stay incomparable after removing it
        let facets = self
            .facets
            .iter()
            .filter(|&&f| face & !f == 0)
            .map(|&f| f & !face)
            .filter(|&f| f != 0)
            .collect();
        Ok(Self::from_facets_unchecked(self.ground, facets))
    }

    /// `{G ∈ Δ : v ∉ G}` on the same ground set.
    pub fn deletion(&self, v: usize) -> Result<Self, ComplexError> {
        if v >= self.ground {
            return Err(ComplexError::VertexOutOfRange {
                vertex: v,
                ground: self.ground,
            });
        }
        let bit = 1u64 << v;
        if self.facets.iter().all(|f| f & bit == 0) {
            return Ok(self.clone());
        }
        let faces = self.facets.iter().map(|&f| f & !bit).collect();
        Ok(Self::from_antichain_candidates(self.ground, faces))
    }

    /// Join with `other`, whose vertices are shifted up by `self.ground()`.
    pub fn join(&self, other: &Self) -> Result<Self, ComplexError> {
        let ground = self.ground + other.ground;
        if ground > MAX_VERTICES {
            return Err(ComplexError::GroundTooLarge(ground));
        }
        let shift = self.ground;
        let left: &[VertexSet] = if self.facets.is_empty() { &[0] } else { &self.facets };
        let right: &[VertexSet] = if other.facets.is_empty() { &[0] } else { &other.facets };
        let facets = left
            .iter()
            .flat_map(|&f| right.iter().map(move |&g| f | g << shift))
            .filter(|&f| f != 0)
            .collect();
        Ok(Self::from_facets_unchecked(ground, facets))
    }

    /// Vertex sets of the connected components of the 1-skeleton.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut comps: Vec<VertexSet> = Vec::new();
        for &f in &self.facets {
            let mut merged = f;
            comps.retain(|&c| {
                if c & merged != 0 {
                    merged |= c;
                    false
                } else {
                    true
                }
            });
            comps.push(merged);
        }
        comps.sort_unstable_by_key(|c| c.trailing_zeros());
        comps
    }

    /// True iff the complex has a vertex and its 1-skeleton is connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Vertices lying in every facet.
    pub fn cone_points(&self) -> VertexSet {
        if self.facets.is_empty() {
            return 0;
        }
        self.facets.iter().fold(u64::MAX, |acc, f| acc & f)
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be injective on the support.
    pub fn relabel(&self, perm: &[usize], ground: usize) -> Result<Self, ComplexError> {
        let facets = self
            .facets
            .iter()
            .map(|&f| members(f).fold(0u64, |acc, v| acc | 1 << perm[v]))
            .collect::<Vec<_>>();
        Self::from_faces(ground, facets)
    }

    /// Relabels vertices by first occurrence in the sorted facet list and
    /// returns the relabeled facets (sorted) with the relabeling map
    /// `old -> new`. Equal keys imply isomorphic complexes.
    pub fn relabeled_key(&self) -> (Vec<VertexSet>, [u8; MAX_VERTICES]) {
        let mut map = [u8::MAX; MAX_VERTICES];
        let mut next = 0u8;
        for &f in &self.facets {
            for v in members(f) {
                if map[v] == u8::MAX {
                    map[v] = next;
                    next += 1;
                }
            }
        }
        let mut key: Vec<VertexSet> = self
            .facets
            .iter()
            .map(|&f| members(f).fold(0u64, |acc, v| acc | 1 << map[v]))
            .collect();
        key.sort_unstable();
        (key, map)
    }

    pub fn canonical_key(&self) -> Vec<VertexSet> {
        self.relabeled_key().0
    }

    /// One facet per line, vertices space-separated.
    pub fn to_facet_list(&self) -> String {
        let mut out = String::new();
        for &f in &self.facets {
            let line: Vec<String> = members(f).map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the one-facet-per-line format. Blank lines are skipped.
    pub fn parse_facet_list(ground: usize, text: &str) -> Result<Self, ComplexError> {
        let mut faces = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut face = 0u64;
            for token in line.split_whitespace() {
                let v: usize = token.parse().map_err(|_| ComplexError::Parse {
                    line: idx + 1,
                    token: token.to_string(),
                })?;
                if v >= ground {
                    return Err(ComplexError::VertexOutOfRange { vertex: v, ground });
                }
                face |= 1 << v;
            }
            faces.push(face);
        }
        Self::from_faces(ground, faces)
    }

    fn check_in_ground(&self, face: VertexSet) -> Result<(), ComplexError> {
        let outside = face & !full_set(self.ground);
        if outside != 0 {
            return Err(ComplexError::VertexOutOfRange {
                vertex: outside.trailing_zeros() as usize,
                ground: self.ground,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, &facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_set(facet))?;
        }
        f.write_str(">")
    }
}

pub fn format_set(set: VertexSet) -> String {
    let parts: Vec<String> = members(set).map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl FVector {
    /// `d` where the vector is `(f_{-1}, ..., f_d)`.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 2
    }

    pub fn facets_if_pure(&self) -> u64 {
        *self.0.last().unwrap_or(&0)
    }

    /// Inverse of [`h_vector`]: `f_{j-1} = Σ_{i≤j} C(d+1-i, j-i) h_i`.
    pub fn from_h(h: &HVector) -> FVector {
        let top = h.0.len() as i64 - 1; // d + 1
        let entries = (0..=top)
            .map(|j| {
                let sum: i128 = (0..=j)
                    .map(|i| binomial(top - i, j - i) * h.0[i as usize] as i128)
                    .sum();
                u64::try_from(sum).expect("f-vector entries are nonnegative")
            })
            .collect();
        FVector(entries)
    }
}

impl HVector {
    pub fn has_negative_entry(&self) -> bool {
        self.0.iter().any(|&h| h < 0)
    }
}

/// `h_i = Σ_{j=0}^{i} (-1)^{i-j} C(d+1-j, i-j) f_{j-1}`.
pub fn h_vector(f: &FVector) -> HVector {
    let top = f.0.len() as i64 - 1; // d + 1
    let entries = (0..=top)
        .map(|i| {
            let sum: i128 = (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(top - j, i - j) * f.0[j as usize] as i128
                })
                .sum();
            i64::try_from(sum).expect("h-vector entry fits in i64")
        })
        .collect();
    HVector(entries)
}

pub(crate) fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Bron–Kerbosch with pivoting. `compat[v]` lists the vertices that may share
/// a set with `v`; reports every maximal set inside `universe`.
fn bron_kerbosch(compat: &[VertexSet], universe: VertexSet) -> Vec<VertexSet> {
    fn recurse(
        compat: &[VertexSet],
        r: VertexSet,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = members(p | x)
            .max_by_key(|&u| (p & compat[u]).count_ones())
            .expect("p is nonempty");
        for v in members(p & !compat[pivot]) {
            let bit = 1u64 << v;
            recurse(compat, r | bit, p & compat[v], x & compat[v], out);
            p &= !bit;
            x |= bit;
        }
    }
    let mut out = Vec::new();
    recurse(compat, 0, universe, 0, &mut out);
    out.sort_unstable();
    out
}

/// Maximal independent sets of a graph given by adjacency bitsets.
pub fn maximal_independent_sets(adjacency: &[VertexSet]) -> Vec<VertexSet> {
    let all = full_set(adjacency.len());
    let compat: Vec<VertexSet> = adjacency
        .iter()
        .enumerate()
        .map(|(v, &adj)| all & !adj & !(1 << v))
        .collect();
    bron_kerbosch(&compat, all)
}

/// The independence complex: facets are the maximal independent sets.
pub fn independence_complex(g: &CirculantGraph) -> SimplicialComplex {
    let facets = maximal_independent_sets(g.adjacency());
    SimplicialComplex::from_facets_unchecked(g.n(), facets)
}

/// Maximal cliques of `g`, sorted as bitsets.
pub fn maximal_cliques(g: &CirculantGraph) -> Vec<VertexSet> {
    bron_kerbosch(g.adjacency(), g.all_vertices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{build_circulant, ConnectionSet};

    fn graph(n: usize, gens: &[usize]) -> CirculantGraph {
        build_circulant(ConnectionSet::new(n, gens.iter().copied()).unwrap())
    }

    fn ind(n: usize, gens: &[usize]) -> SimplicialComplex {
        independence_complex(&graph(n, gens))
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().fold(0, |acc, v| acc | 1 << v)
    }

    fn cx(ground: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(ground, facets.iter().map(|f| set(f))).unwrap()
    }

    #[test]
    fn independence_complex_examples() {
        assert_eq!(ind(4, &[1]).facets(), &[set(&[0, 2]), set(&[1, 3])]);
        let c16 = ind(16, &[1, 4, 8]);
        assert_eq!(c16.num_facets(), 80);
        assert!(c16.facets().iter().all(|f| f.count_ones() == 4));
        assert_eq!(c16.dim(), 3);
        assert_eq!(ind(3, &[1]).facets(), &[1, 2, 4]);
    }

    #[test]
    fn independence_facets_are_maximal_independent_sets() {
        for n in 3..=12 {
            for spec in crate::circulant::enumerate_connection_sets(n) {
                let g = build_circulant(spec);
                let c = independence_complex(&g);
                assert_eq!(c.vertex_support(), g.all_vertices());
                for &f in c.facets() {
                    assert!(members(f).all(|v| g.neighbors(v) & f == 0));
                    assert!((0..n).all(|v| f >> v & 1 == 1 || g.neighbors(v) & f != 0));
                }
            }
        }
    }

    #[test]
    fn clique_examples() {
        assert_eq!(
            maximal_cliques(&graph(4, &[1])),
            vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 3]), set(&[2, 3])]
        );
        let cliques = maximal_cliques(&graph(12, &[2, 4]));
        assert!(cliques.iter().all(|c| c.count_ones() == 3));
        assert!(cliques.contains(&set(&[0, 2, 4])));
        assert_eq!(maximal_cliques(&graph(3, &[1])), vec![0b111]);
    }

    #[test]
    fn c12_2_4_cliques_match_brute_force() {
        let g = graph(12, &[2, 4]);
        let is_clique = |s: u64| {
            members(s).all(|a| members(s).all(|b| a == b || g.is_edge(a, b)))
        };
        let mut brute: Vec<u64> = (1u64..1 << 12)
            .filter(|&s| is_clique(s))
            .filter(|&s| (0..12).all(|v| s >> v & 1 == 1 || !is_clique(s | 1 << v)))
            .collect();
        brute.sort_unstable();
        assert_eq!(maximal_cliques(&g), brute);
        assert_eq!(brute.len(), 16);
    }

    #[test]
    fn purity_examples() {
        assert!(ind(4, &[1]).is_pure());
        assert!(!ind(8, &[1]).is_pure());
        // {1,3}·2 = {1,2} mod 7, so this is C_7(1,2) in disguise
        assert!(ind(7, &[1, 3]).is_pure());
        assert!(!cx(3, &[&[0, 1], &[2]]).is_pure());
        assert!(SimplicialComplex::empty(0).is_pure());
    }

    #[test]
    fn f_vector_examples() {
        assert_eq!(ind(7, &[3]).f_vector(), FVector(vec![1, 7, 14, 7]));
        let del = ind(16, &[1, 4, 8]).deletion(0).unwrap();
        assert_eq!(del.f_vector(), FVector(vec![1, 15, 70, 117, 60]));
        assert_eq!(cx(3, &[&[0, 1, 2]]).f_vector(), FVector(vec![1, 3, 3, 1]));
        assert_eq!(SimplicialComplex::empty(4).f_vector(), FVector(vec![1]));
    }

    #[test]
    fn h_vector_examples() {
        assert_eq!(h_vector(&FVector(vec![1, 7, 14, 7])), HVector(vec![1, 4, 3, -1]));
        assert_eq!(
            h_vector(&FVector(vec![1, 15, 70, 117, 60])),
            HVector(vec![1, 11, 31, 18, -1])
        );
        assert_eq!(h_vector(&FVector(vec![1, 5, 6, 2])), HVector(vec![1, 2, -1, 0]));
        assert_eq!(h_vector(&FVector(vec![1])), HVector(vec![1]));
    }

    #[test]
    fn link_examples() {
        let c = ind(10, &[1, 4]);
        assert_eq!(c.link(1).unwrap(), cx(10, &[&[3, 5, 8], &[2, 5, 7]]));
        assert_eq!(c.link(0).unwrap(), c);
        let c = ind(6, &[1, 3]);
        assert_eq!(c.link(1).unwrap(), cx(6, &[&[2, 4]]));
        assert_eq!(c.link(set(&[0, 1])), Err(ComplexError::NotAFace(set(&[0, 1]))));
        let facet = c.facets()[0];
        assert_eq!(c.link(facet).unwrap(), SimplicialComplex::empty(6));
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(cx(3, &[&[0, 1], &[1, 2]]).deletion(0).unwrap(), cx(3, &[&[1, 2]]));
        assert_eq!(ind(4, &[1]).deletion(0).unwrap(), cx(4, &[&[1, 3], &[2]]));
        assert!(matches!(
            ind(4, &[1]).deletion(4),
            Err(ComplexError::VertexOutOfRange { vertex: 4, ground: 4 })
        ));
    }

    #[test]
    fn deletion_is_independence_complex_of_vertex_deleted_graph() {
        let g = graph(11, &[1, 3]);
        let del = independence_complex(&g).deletion(0).unwrap();
        let mut adj = g.adjacency().to_vec();
        for (v, row) in adj.iter_mut().enumerate() {
            if v == 0 {
                *row = 0;
            } else {
                *row &= !1;
            }
        }
        // vertex 0 is isolated in `adj`; drop it from every maximal independent set
        let expected = SimplicialComplex::from_faces(
            11,
            maximal_independent_sets(&adj).into_iter().map(|f| f & !1),
        )
        .unwrap();
        assert_eq!(del, expected);
    }

    #[test]
    fn join_examples() {
        let c4 = ind(4, &[1]);
        let joined = c4.join(&c4).unwrap();
        // component {0,2,4,6} of C_8(2) takes c4's labels 0..4 as 0,2,4,6
        let perm = [0, 2, 4, 6, 1, 3, 5, 7];
        assert_eq!(joined.relabel(&perm, 8).unwrap(), ind(8, &[2]));

        let points = cx(2, &[&[0], &[1]]);
        assert_eq!(points.join(&points).unwrap().num_facets(), 4);

        let cone = c4.join(&cx(1, &[&[0]])).unwrap();
        assert_eq!(cone.dim(), c4.dim() + 1);
        let mut h = c4.h_vector().0;
        h.push(0);
        assert_eq!(cone.h_vector().0, h);
    }

    #[test]
    fn connectivity_examples() {
        assert!(!ind(4, &[1]).is_connected());
        assert!(ind(6, &[2, 3]).is_connected());
        assert!(cx(3, &[&[0, 1, 2]]).is_connected());
        assert!(!SimplicialComplex::empty(3).is_connected());
    }

    #[test]
    fn facet_list_round_trip() {
        let c = ind(10, &[1, 4]);
        let text = c.to_facet_list();
        assert_eq!(SimplicialComplex::parse_facet_list(10, &text).unwrap(), c);
        assert!(matches!(
            SimplicialComplex::parse_facet_list(10, "1 2\n3 x\n"),
            Err(ComplexError::Parse { line: 2, .. })
        ));
    }
}
