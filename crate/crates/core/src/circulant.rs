//! Circulant graphs `C_n(S)`, their connection sets, multiplier equivalence
//! and the one-paired construction.
//!
//! Vertices are `0..n` and vertex sets are `u64` bitsets, so `n` is capped at
//! [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex set over `0..64`, bit `v` set iff `v` is a member.
pub type VertexSet = u64;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count must be between 1 and {MAX_VERTICES}, got {0}")]
    VertexCount(usize),
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("generator {gen} exceeds floor({n}/2)")]
    GeneratorTooLarge { gen: usize, n: usize },
    #[error("one-paired spec needs a, b >= 1, got a = {a}, b = {b}")]
    OnePairedZero { a: usize, b: usize },
    #[error("one-paired spec needs ab | n, but {a}*{b} does not divide {n}")]
    OnePairedDivisibility { n: usize, a: usize, b: usize },
    #[error("cannot parse {input:?} at position {position}: {reason}")]
    Parse {
        input: String,
        position: usize,
        reason: String,
    },
}

/// The pair `(n, S)` naming `C_n(S)`. `S` is kept sorted and duplicate-free,
/// every element in `1..=n/2`. The empty set (edgeless graph) is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConnectionSet")]
pub struct ConnectionSet {
    n: usize,
    #[serde(rename = "s")]
    gens: Vec<usize>,
}

#[derive(Deserialize)]
struct RawConnectionSet {
    n: usize,
    s: Vec<usize>,
}

impl TryFrom<RawConnectionSet> for ConnectionSet {
    type Error = GraphError;

    fn try_from(raw: RawConnectionSet) -> Result<Self, Self::Error> {
        ConnectionSet::new(raw.n, raw.s)
    }
}

impl ConnectionSet {
    pub fn new(n: usize, gens: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mut gens: Vec<usize> = gens.into_iter().collect();
        for &g in &gens {
            if g == 0 {
                return Err(GraphError::ZeroGenerator);
            }
            if g > n / 2 {
                return Err(GraphError::GeneratorTooLarge { gen: g, n });
            }
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(Self { n, gens })
    }

    /// Builds from a bitmask over `1..=n/2` (bit `s - 1` means `s ∈ S`).
    pub(crate) fn from_mask(n: usize, mask: u64) -> Self {
        let gens = (1..=n / 2).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        Self { n, gens }
    }

    #[cfg(test)]
    pub(crate) fn mask(&self) -> u64 {
        self.gens.iter().fold(0, |m, s| m | 1 << (s - 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Image of the connection set under `v ↦ uv`, folded back into `1..=n/2`.
    pub fn scaled(&self, u: usize) -> ConnectionSet {
        let n = self.n;
        let gens = self
            .gens
            .iter()
            .map(|&s| {
                let r = (s * u) % n;
                r.min(n - r)
            })
            .collect::<Vec<_>>();
        ConnectionSet::new(n, gens).expect("unit multiple of a valid connection set is valid")
    }

    /// Census ordering: by `n`, then `|S|`, then `S` lexicographically.
    pub fn census_cmp(&self, other: &Self) -> Ordering {
        (self.n, self.gens.len(), &self.gens).cmp(&(other.n, other.gens.len(), &other.gens))
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, s) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for ConnectionSet {
    type Err = GraphError;

    /// Parses `"n:a1,a2,...,at"`. An empty list after the colon is the
    /// edgeless graph.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let parse_err = |position: usize, reason: String| GraphError::Parse {
            input: input.to_string(),
            position,
            reason,
        };
        let colon = input
            .find(':')
            .ok_or_else(|| parse_err(input.len(), "expected ':' after the vertex count".into()))?;
        let head = &input[..colon];
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err(0, format!("invalid vertex count {head:?}")))?;
        let mut gens = Vec::new();
        let tail = &input[colon + 1..];
        if !tail.trim().is_empty() {
            let mut offset = colon + 1;
            for token in tail.split(',') {
                let value: usize = token
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(offset, format!("invalid generator {token:?}")))?;
                gens.push(value);
                offset += token.len() + 1;
            }
        }
        ConnectionSet::new(n, gens)
    }
}

/// `C_n(S)` with per-vertex adjacency bitsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantGraph {
    spec: ConnectionSet,
    adjacency: Vec<VertexSet>,
}

impl CirculantGraph {
    pub fn spec(&self) -> &ConnectionSet {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn adjacency(&self) -> &[VertexSet] {
        &self.adjacency
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn all_vertices(&self) -> VertexSet {
        full_set(self.n())
    }

    /// The rotation `v ↦ v + k (mod n)` applied to a vertex set.
    pub fn rotate(&self, set: VertexSet, k: usize) -> VertexSet {
        rotate_set(set, k, self.n())
    }
}

pub(crate) fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn rotate_set(set: VertexSet, k: usize, n: usize) -> VertexSet {
    let k = k % n;
    if k == 0 {
        return set;
    }
    ((set << k) | (set >> (n - k))) & full_set(n)
}

/// Builds `C_n(S)`: `{a, b}` is an edge iff `|a - b|` or `n - |a - b|` lies in `S`.
pub fn build_circulant(spec: ConnectionSet) -> CirculantGraph {
    let n = spec.n;
    let mut row0: VertexSet = 0;
    for &s in &spec.gens {
        row0 |= 1 << s;
        row0 |= 1 << ((n - s) % n);
    }
    let adjacency = (0..n).map(|i| rotate_set(row0, i, n)).collect();
    CirculantGraph { spec, adjacency }
}

/// `C(n; a, b)`: `S` is the multiples of `a` in `1..=n/2` that are not
/// multiples of `ab`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OnePairedSpec {
    n: usize,
    a: usize,
    b: usize,
}

impl OnePairedSpec {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        if a == 0 || b == 0 {
            return Err(GraphError::OnePairedZero { a, b });
        }
        if n % (a * b) != 0 {
            return Err(GraphError::OnePairedDivisibility { n, a, b });
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// `n / (ab)`, the size of each independent coset block.
    pub fn m(&self) -> usize {
        self.n / (self.a * self.b)
    }

    pub fn connection_set(&self) -> ConnectionSet {
        let ab = self.a * self.b;
        let gens = (1..=self.n / 2).filter(|d| d % self.a == 0 && d % ab != 0);
        ConnectionSet::new(self.n, gens).expect("one-paired generators lie in 1..=n/2")
    }
}

pub fn one_paired(spec: OnePairedSpec) -> CirculantGraph {
    build_circulant(spec.connection_set())
}

/// Units of `Z_n`, ascending.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|u| u.gcd(&n) == 1).collect()
}

/// A unit `u` with `u·S1 = S2`, if one exists.
pub fn multiplier_between(s1: &ConnectionSet, s2: &ConnectionSet) -> Option<usize> {
    if s1.n != s2.n || s1.gens.len() != s2.gens.len() {
        return None;
    }
    units(s1.n).into_iter().find(|&u| s1.scaled(u) == *s2)
}

/// True iff some unit `u` mod `n` maps `S1` onto `S2` (Ádám equivalence).
/// This is always a graph isomorphism via `v ↦ uv`.
pub fn multiplier_equivalent(n: usize, s1: &ConnectionSet, s2: &ConnectionSet) -> bool {
    s1.n == n && s2.n == n && multiplier_between(s1, s2).is_some()
}

/// Lexicographically smallest member of the multiplier class of `spec`.
pub fn canonical_representative(spec: &ConnectionSet) -> ConnectionSet {
    units(spec.n)
        .into_iter()
        .map(|u| spec.scaled(u))
        .min_by(|a, b| a.gens.cmp(&b.gens))
        .expect("at least one unit")
}

/// One representative (the lexicographically smallest) per multiplier class
/// of nonempty subsets of `1..=n/2`, in census order.
pub fn enumerate_connection_sets(n: usize) -> Vec<ConnectionSet> {
    assert!((1..=MAX_VERTICES).contains(&n), "vertex count out of range");
    let half = n / 2;
    assert!(half < 32, "enumeration over 2^{half} subsets is not supported");
    let us = units(n);
    let mut reps: Vec<ConnectionSet> = (1u64..1 << half)
        .map(|mask| ConnectionSet::from_mask(n, mask))
        .filter(|spec| {
            us.iter()
                .all(|&u| spec.scaled(u).gens.as_slice() >= spec.gens.as_slice())
        })
        .collect();
    reps.sort_by(|a, b| a.census_cmp(b));
    reps
}

/// Vertex sets of the connected components, ordered by smallest vertex.
pub fn connected_components(g: &CirculantGraph) -> Vec<VertexSet> {
    let mut remaining = g.all_vertices();
    let mut comps = Vec::new();
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let mut comp: VertexSet = 1 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = g.adjacency[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        remaining &= !comp;
        comps.push(comp);
    }
    comps
}

pub fn is_graph_connected(g: &CirculantGraph) -> bool {
    connected_components(g).len() == 1
}

/// A vertex bijection `phi` with `phi(G) = H`, if one exists, found by
/// backtracking. Both graphs are vertex-transitive, so `0 ↦ 0` is assumed.
pub fn find_isomorphism(g: &CirculantGraph, h: &CirculantGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    fn extend(
        g: &CirculantGraph,
        h: &CirculantGraph,
        phi: &mut Vec<usize>,
        used: VertexSet,
    ) -> bool {
        let v = phi.len();
        if v == g.n() {
            return true;
        }
        for w in members(h.all_vertices() & !used) {
            let consistent = (0..v).all(|u| g.is_edge(u, v) == h.is_edge(phi[u], w));
            if consistent {
                phi.push(w);
                if extend(g, h, phi, used | 1 << w) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    let mut phi = vec![0];
    extend(g, h, &mut phi, 1).then_some(phi)
}

pub(crate) fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}
