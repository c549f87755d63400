//! Reduced simplicial homology over `Q` or `GF(p)`, and the Cohen-Macaulay
//! (Reisner) and Buchsbaum checks built on it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::circulant::{members, units, CirculantGraph, VertexSet};
use crate::linalg::{self, SparseRow};
use crate::simplex::{ComplexError, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary index {index} outside -1..={dim}")]
    IndexOutOfRange { index: isize, dim: isize },
    #[error("invalid field {0:?}: expected QQ or a prime")]
    InvalidField(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Field {
    #[default]
    Rational,
    Prime(u32),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = HomologyError;

    /// Accepts `QQ`, `Q`, `0`, a prime `p`, or `GF(p)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "QQ" | "Q" | "0") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        match digits.parse::<u32>() {
            Ok(p) if linalg::is_prime(p) => Ok(Field::Prime(p)),
            _ => Err(HomologyError::InvalidField(s.to_string())),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `β̃_{-1}, β̃_0, ..., β̃_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    pub betti: Vec<u64>,
}

impl BettiTable {
    /// `β̃_i`, zero outside the stored range.
    pub fn reduced(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.betti.get(k).copied())
            .unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti)
    }

    /// True iff `β̃_i = 0` for every `i < dim`.
    pub fn vanishes_below(&self, dim: isize) -> bool {
        (-1..dim).all(|i| self.reduced(i) == 0)
    }
}

/// `Σ_{k} (-1)^{k-1} v_k`, i.e. the alternating sum indexed from dimension -1.
pub(crate) fn alternating_sum(v: &[u64]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 1 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Sparse boundary map `∂_i : C_i → C_{i-1}`; rows are `(i-1)`-faces and
/// columns `i`-faces, both sorted as bitsets. The column of a face with
/// sorted vertices `v_0 < ... < v_i` has `(-1)^k` at the face missing `v_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub row_faces: Vec<VertexSet>,
    pub col_faces: Vec<VertexSet>,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    fn between(row_faces: &[VertexSet], col_faces: &[VertexSet]) -> Self {
        let index: HashMap<VertexSet, usize> =
            row_faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let columns = col_faces
            .iter()
            .map(|&face| {
                let mut col: Vec<(usize, i64)> = if face == 0 {
                    Vec::new()
                } else {
                    members(face)
                        .enumerate()
                        .map(|(k, v)| {
                            let sign = if k % 2 == 0 { 1 } else { -1 };
                            (index[&(face & !(1 << v))], sign)
                        })
                        .collect()
                };
                col.sort_unstable();
                col
            })
            .collect();
        Self {
            row_faces: row_faces.to_vec(),
            col_faces: col_faces.to_vec(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.row_faces.len()
    }

    pub fn cols(&self) -> usize {
        self.col_faces.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols()]; self.rows()];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                dense[r][c] = v;
            }
        }
        dense
    }

    /// The transpose as sparse rows (one per column face); rank is unchanged.
    fn transposed_rows(&self) -> Vec<SparseRow> {
        self.columns.clone()
    }

    pub fn rank(&self, field: Field) -> usize {
        let rows = self.transposed_rows();
        match field {
            Field::Rational => linalg::rank_rational(rows),
            Field::Prime(p) => linalg::rank_mod_p(rows, p),
        }
    }
}

/// `∂_i` for `-1 ≤ i ≤ dim c`. `∂_0` sends every vertex to `∅`, so the
/// resulting homology is reduced.
pub fn boundary_matrix(c: &SimplicialComplex, i: isize) -> Result<BoundaryMatrix, HomologyError> {
    let dim = c.dim();
    if i < -1 || i > dim {
        return Err(HomologyError::IndexOutOfRange { index: i, dim });
    }
    let levels = c.faces_by_size();
    let cols = &levels[(i + 1) as usize];
    let rows: &[VertexSet] = if i == -1 { &[] } else { &levels[i as usize] };
    Ok(BoundaryMatrix::between(rows, cols))
}

/// Reduced Betti numbers `β̃_i = f_i - rank ∂_i - rank ∂_{i+1}`.
pub fn reduced_betti(c: &SimplicialComplex, field: Field) -> BettiTable {
    let levels = c.faces_by_size();
    let top = levels.len() - 1;
    // ranks[k] = rank of the map out of size-k faces
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        ranks[k] = BoundaryMatrix::between(&levels[k - 1], &levels[k]).rank(field);
    }
    let betti = (0..=top)
        .map(|k| (levels[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    BettiTable { field, betti }
}

/// Vertex automorphisms of a complex, as a list of permutations of the
/// ground set (the identity may be omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    perms: Vec<Vec<u8>>,
}

impl Symmetry {
    pub fn trivial() -> Self {
        Self { perms: Vec::new() }
    }

    /// Caller guarantees each permutation is an automorphism of the complex
    /// the symmetry is used with.
    pub fn from_permutations(perms: Vec<Vec<u8>>) -> Self {
        Self { perms }
    }

    /// Automorphisms `x ↦ ux + k` of `C_n(S)` for every rotation `k` and every
    /// unit `u` with `uS = S`. These act on `Ind(C_n(S))` as well.
    pub fn circulant(g: &CirculantGraph) -> Self {
        let n = g.n();
        let spec = g.spec();
        let mut perms = Vec::new();
        for u in units(n) {
            if spec.scaled(u) != *spec {
                continue;
            }
            for k in 0..n {
                perms.push((0..n).map(|x| ((u * x + k) % n) as u8).collect());
            }
        }
        Self { perms }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn apply(&self, perm: usize, set: VertexSet) -> VertexSet {
        members(set).fold(0, |acc, v| acc | 1 << self.perms[perm][v])
    }


    /// Permutations fixing vertex `v`.
    pub fn stabilizer(&self, v: usize) -> Self {
        Self {
            perms: self
                .perms
                .iter()
                .filter(|p| p[v] as usize == v)
                .cloned()
                .collect(),
        }
    }

    /// One representative (the smallest) of each orbit of vertices in `support`.
    pub fn orbit_representatives(&self, support: VertexSet) -> Vec<usize> {
        let mut seen: VertexSet = 0;
        let mut reps = Vec::new();
        for v in members(support) {
            if seen >> v & 1 == 1 {
                continue;
            }
            reps.push(v);
            seen |= 1 << v;
            for p in &self.perms {
                seen |= 1 << p[v];
            }
        }
        reps
    }
}

/// Memoized Reisner check. Links of a vertex are recursed into, so a complex
/// is CM iff its own homology vanishes below the top and every vertex link is
/// CM.
pub struct CmChecker {
    field: Field,
    memo: HashMap<Vec<VertexSet>, bool>,
}

impl CmChecker {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            memo: HashMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `c` must be pure.
    pub fn check(&mut self, c: &SimplicialComplex, symmetry: &Symmetry) -> bool {
        if c.dim() <= 0 || c.is_simplex() {
            return true;
        }
        let cone = c.cone_points();
        if cone != 0 {
            let apex = cone.trailing_zeros() as usize;
            let link = c.link(1 << apex).expect("cone point is a face");
            return self.check(&link, &symmetry.stabilizer(apex));
        }
        if c.dim() == 1 {
            return c.is_connected();
        }
        let key = c.canonical_key();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let reps = if symmetry.is_empty() {
            members(c.vertex_support()).collect()
        } else {
            symmetry.orbit_representatives(c.vertex_support())
        };
        let ok = reps.into_iter().all(|v| {
            let link = c.link(1 << v).expect("vertex of the support is a face");
            let sub = if symmetry.is_empty() {
                Symmetry::trivial()
            } else {
                symmetry.stabilizer(v)
            };
            self.check(&link, &sub)
        }) && reduced_betti(c, self.field).vanishes_below(c.dim());
        self.memo.insert(key, ok);
        ok
    }
}

/// Reisner's criterion, testing vertex-link recursion with memoization.
pub fn is_cohen_macaulay(c: &SimplicialComplex, field: Field) -> Result<bool, ComplexError> {
    is_cohen_macaulay_with(c, field, &Symmetry::trivial())
}

/// As [`is_cohen_macaulay`], visiting one vertex per orbit of `symmetry`.
pub fn is_cohen_macaulay_with(
    c: &SimplicialComplex,
    field: Field,
    symmetry: &Symmetry,
) -> Result<bool, ComplexError> {
    c.require_pure()?;
    Ok(CmChecker::new(field).check(c, symmetry))
}

/// Reisner's criterion taken literally: every face's link, homology computed
/// from scratch each time.
pub fn is_cohen_macaulay_exhaustive(
    c: &SimplicialComplex,
    field: Field,
) -> Result<bool, ComplexError> {
    c.require_pure()?;
    Ok(c.faces().into_iter().all(|face| {
        let link = c.link(face).expect("enumerated face");
        reduced_betti(&link, field).vanishes_below(link.dim())
    }))
}

/// True iff every vertex link is Cohen-Macaulay. With a vertex-transitive
/// symmetry (a circulant), only the link of one vertex is examined.
pub fn is_buchsbaum(
    c: &SimplicialComplex,
    field: Field,
    symmetry: Option<&Symmetry>,
) -> Result<bool, ComplexError> {
    c.require_pure()?;
    let trivial = Symmetry::trivial();
    let symmetry = symmetry.unwrap_or(&trivial);
    let mut checker = CmChecker::new(field);
    let reps = if symmetry.is_empty() {
        members(c.vertex_support()).collect()
    } else {
        symmetry.orbit_representatives(c.vertex_support())
    };
    Ok(reps.into_iter().all(|v| {
        let link = c.link(1 << v).expect("vertex is a face");
        checker.check(&link, &symmetry.stabilizer(v))
    }))
}
