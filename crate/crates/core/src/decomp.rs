//! Vertex decomposability and shellability of pure complexes.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::circulant::{members, VertexSet};
use crate::homology::Symmetry;
use crate::simplex::{format_set, ComplexError, SimplicialComplex};

/// Default node budget for [`find_shelling`].
pub const DEFAULT_SHELLING_BUDGET: u64 = 100_000_000;

/// Cap on remembered dead prefixes; beyond it the search keeps going without
/// recording new ones.
const DEAD_PREFIX_CAP: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{given} facets given, {expected} expected")]
    FacetCount { given: usize, expected: usize },
    #[error("certificate facet {} has {size} vertices, expected {expected}", format_set(*.facet))]
    FacetSize {
        facet: VertexSet,
        size: usize,
        expected: usize,
    },
    #[error("certificate is not a permutation of the facets (missing {missing}, unexpected {unexpected})", missing = fmt_sets(.missing), unexpected = fmt_sets(.unexpected))]
    NotAPermutation {
        missing: Vec<VertexSet>,
        unexpected: Vec<VertexSet>,
    },
    #[error("certificate token {token:?} is not a vertex label")]
    Parse { token: String },
    #[error("{count} vertex labels do not split into facets of size {size}")]
    Ragged { count: usize, size: usize },
}

fn fmt_sets(sets: &[VertexSet]) -> String {
    let parts: Vec<String> = sets.iter().map(|&s| format_set(s)).collect();
    format!("[{}]", parts.join(", "))
}

/// A facet ordering `F_1 < ... < F_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingCertificate {
    pub order: Vec<VertexSet>,
}

impl ShellingCertificate {
    /// Reads whitespace-separated vertex labels, grouped left to right into
    /// facets of `facet_size` vertices each.
    pub fn parse(text: &str, facet_size: usize) -> Result<Self, DecompError> {
        let labels = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .ok()
                    .filter(|&v| v < 64)
                    .ok_or_else(|| DecompError::Parse {
                        token: tok.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if facet_size == 0 || labels.len() % facet_size != 0 {
            return Err(DecompError::Ragged {
                count: labels.len(),
                size: facet_size,
            });
        }
        let order = labels
            .chunks(facet_size)
            .map(|chunk| chunk.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect();
        Ok(Self { order })
    }

    /// Same layout as [`ShellingCertificate::parse`] reads, `per_line` facets
    /// per line.
    pub fn to_text(&self, per_line: usize) -> String {
        let mut out = String::new();
        for (i, &facet) in self.order.iter().enumerate() {
            let group: Vec<String> = members(facet).map(|v| v.to_string()).collect();
            out.push_str(&group.join(" "));
            let end_of_line = (i + 1) % per_line.max(1) == 0 || i + 1 == self.order.len();
            out.push_str(if end_of_line { "\n" } else { "   " });
        }
        out
    }
}

/// Outcome of checking a facet order against the shelling condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellingCheck {
    Valid,
    /// 1-based positions `j < i` with no `x ∈ F_i \ F_j` and `k < i` such
    /// that `F_i \ F_k = {x}`.
    Violation { i: usize, j: usize },
}

impl fmt::Display for ShellingCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShellingCheck::Valid => f.write_str("valid shelling"),
            ShellingCheck::Violation { i, j } => write!(f, "violation at (i, j) = ({i}, {j})"),
        }
    }
}

/// Vertices `x ∈ face` with `face \ {x}` contained in one of `earlier`.
fn ridge_mask(face: VertexSet, earlier: &[VertexSet]) -> VertexSet {
    earlier
        .iter()
        .map(|&k| face & !k)
        .filter(|d| d.count_ones() == 1)
        .fold(0, |acc, d| acc | d)
}

fn extends(face: VertexSet, earlier: &[VertexSet]) -> Option<usize> {
    let ridges = ridge_mask(face, earlier);
    earlier.iter().position(|&g| face & !g & ridges == 0)
}

/// Checks that `cert` permutes the facets of `c`, then tests every pair.
pub fn check_shelling(
    c: &SimplicialComplex,
    cert: &ShellingCertificate,
) -> Result<ShellingCheck, DecompError> {
    let expected_size = (c.dim() + 1).max(0) as usize;
    if let Some(&bad) = cert
        .order
        .iter()
        .find(|f| f.count_ones() as usize != expected_size)
    {
        return Err(DecompError::FacetSize {
            facet: bad,
            size: bad.count_ones() as usize,
            expected: expected_size,
        });
    }
    if cert.order.len() != c.num_facets() {
        return Err(DecompError::FacetCount {
            given: cert.order.len(),
            expected: c.num_facets(),
        });
    }
    let given: HashSet<VertexSet> = cert.order.iter().copied().collect();
    let wanted: HashSet<VertexSet> = c.facets().iter().copied().collect();
    if given != wanted || given.len() != cert.order.len() {
        let mut missing: Vec<VertexSet> = wanted.difference(&given).copied().collect();
        let mut unexpected: Vec<VertexSet> = given.difference(&wanted).copied().collect();
        missing.sort_unstable();
        unexpected.sort_unstable();
        return Err(DecompError::NotAPermutation {
            missing,
            unexpected,
        });
    }
    for i in 1..cert.order.len() {
        if let Some(j) = extends(cert.order[i], &cert.order[..i]) {
            return Ok(ShellingCheck::Violation { i: i + 1, j: j + 1 });
        }
    }
    Ok(ShellingCheck::Valid)
}

pub fn verify_shelling(
    c: &SimplicialComplex,
    cert: &ShellingCertificate,
) -> Result<bool, DecompError> {
    Ok(check_shelling(c, cert)? == ShellingCheck::Valid)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellingOutcome {
    Found(ShellingCertificate),
    /// The search space was exhausted (or a necessary condition failed).
    NotShellable,
    BudgetExceeded { nodes: u64 },
}

impl ShellingOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, ShellingOutcome::Found(_))
    }
}

#[derive(Debug, Clone)]
pub struct ShellingOptions {
    pub budget: u64,
    /// Automorphisms of the complex; only one facet per orbit is tried first.
    pub symmetry: Option<Symmetry>,
    /// Reject up front when the h-vector has a negative entry or the complex
    /// is disconnected in dimension ≥ 1.
    pub prune: bool,
}

impl Default for ShellingOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_SHELLING_BUDGET,
            symmetry: None,
            prune: true,
        }
    }
}

pub fn find_shelling(c: &SimplicialComplex) -> Result<ShellingOutcome, DecompError> {
    find_shelling_with(c, &ShellingOptions::default())
}

/// Backtracking over facet orders. A facet may follow a prefix iff the
/// shelling condition holds against every facet in it; that condition only
/// depends on the prefix as a set, so failed sets are remembered.
pub fn find_shelling_with(
    c: &SimplicialComplex,
    opts: &ShellingOptions,
) -> Result<ShellingOutcome, DecompError> {
    c.require_pure()?;
    let facets = c.facets().to_vec();
    if facets.len() <= 1 {
        return Ok(ShellingOutcome::Found(ShellingCertificate { order: facets }));
    }
    if opts.prune && (c.h_vector().has_negative_entry() || (c.dim() >= 1 && !c.is_connected())) {
        return Ok(ShellingOutcome::NotShellable);
    }
    let mut search = Search::new(facets, opts.budget);
    let seeds = search.seeds(opts.symmetry.as_ref());
    for seed in seeds {
        search.push(seed);
        let found = search.dfs();
        if found == Some(true) {
            let order = search.order.iter().map(|&i| search.facets[i]).collect();
            return Ok(ShellingOutcome::Found(ShellingCertificate { order }));
        }
        if found.is_none() {
            return Ok(ShellingOutcome::BudgetExceeded {
                nodes: search.nodes,
            });
        }
        search.pop();
    }
    Ok(ShellingOutcome::NotShellable)
}

struct Search {
    facets: Vec<VertexSet>,
    /// `ridges[depth][f]`: ridge mask of facet `f` against the prefix of that depth.
    ridges: Vec<Vec<VertexSet>>,
    used: Vec<u64>,
    order: Vec<usize>,
    dead: HashSet<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(facets: Vec<VertexSet>, budget: u64) -> Self {
        let t = facets.len();
        Self {
            ridges: vec![vec![0; t]],
            used: vec![0; t.div_ceil(64)],
            order: Vec::with_capacity(t),
            dead: HashSet::new(),
            nodes: 0,
            budget,
            facets,
        }
    }

    /// Facets to try first: one per symmetry orbit, most ridge-neighbours first.
    fn seeds(&self, symmetry: Option<&Symmetry>) -> Vec<usize> {
        let index: HashMap<VertexSet, usize> =
            self.facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let degree = |f: VertexSet| {
            self.facets
                .iter()
                .filter(|&&g| (f & !g).count_ones() == 1)
                .count()
        };
        let mut covered = vec![false; self.facets.len()];
        let mut seeds = Vec::new();
        for (i, &f) in self.facets.iter().enumerate() {
            if covered[i] {
                continue;
            }
            seeds.push(i);
            covered[i] = true;
            if let Some(sym) = symmetry {
                for p in 0..sym.len() {
                    if let Some(&j) = index.get(&sym.apply(p, f)) {
                        covered[j] = true;
                    }
                }
            }
        }
        seeds.sort_by_key(|&i| (std::cmp::Reverse(degree(self.facets[i])), i));
        seeds
    }

    fn is_used(&self, i: usize) -> bool {
        self.used[i / 64] >> (i % 64) & 1 == 1
    }

    fn push(&mut self, i: usize) {
        let added = self.facets[i];
        let mut next = self.ridges.last().expect("base level").clone();
        for (r, &f) in next.iter_mut().zip(&self.facets) {
            let diff = f & !added;
            if diff.count_ones() == 1 {
                *r |= diff;
            }
        }
        self.ridges.push(next);
        self.used[i / 64] |= 1 << (i % 64);
        self.order.push(i);
    }

    fn pop(&mut self) {
        let i = self.order.pop().expect("nonempty order");
        self.used[i / 64] &= !(1 << (i % 64));
        self.ridges.pop();
    }

    fn addable(&self, i: usize) -> bool {
        let f = self.facets[i];
        let ridges = self.ridges.last().expect("base level")[i];
        ridges != 0 && self.order.iter().all(|&g| f & !self.facets[g] & ridges != 0)
    }

    /// `Some(true)` on success, `Some(false)` when this prefix cannot be
    /// completed, `None` when the budget ran out.
    fn dfs(&mut self) -> Option<bool> {
        if self.order.len() == self.facets.len() {
            return Some(true);
        }
        if self.dead.contains(&self.used) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let level = self.ridges.last().expect("base level");
        let mut candidates: Vec<usize> = (0..self.facets.len())
            .filter(|&i| !self.is_used(i) && self.addable(i))
            .collect();
        candidates.sort_by_key(|&i| (std::cmp::Reverse(level[i].count_ones()), i));
        for i in candidates {
            self.push(i);
            let r = self.dfs();
            if r != Some(false) {
                return r;
            }
            self.pop();
        }
        if self.dead.len() < DEAD_PREFIX_CAP {
            self.dead.insert(self.used.clone());
        }
        Some(false)
    }
}

/// How one node of a vertex decomposition was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessStep {
    /// A single facet (or `{∅}`).
    Simplex,
    /// Dimension 0, decomposable by shedding points one at a time.
    ZeroDimensional,
    /// Dimension 1 and connected.
    ConnectedGraph,
    /// Shedding vertex; the link, then the deletion, follow in the witness.
    Shed(usize),
}

/// Result of the vertex decomposability test. When `value` is true the
/// witness lists `(complex hash, step)` in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompVerdict {
    pub value: bool,
    pub witness: Option<Vec<(u64, WitnessStep)>>,
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    No,
    Base(WitnessStep),
    /// Shedding vertex in the relabeled (key) coordinates.
    Shed(u8),
}

struct VdSolver {
    memo: HashMap<Vec<VertexSet>, Memo>,
    prune: bool,
}

fn complex_hash(key: &[VertexSet]) -> u64 {
    let mut h = DefaultHasher::new();
    key.hash(&mut h);
    h.finish()
}

impl VdSolver {
    fn new(prune: bool) -> Self {
        Self {
            memo: HashMap::new(),
            prune,
        }
    }

    fn solve(&mut self, c: &SimplicialComplex) -> bool {
        if c.is_simplex() {
            return true;
        }
        let (key, map) = c.relabeled_key();
        if let Some(entry) = self.memo.get(&key) {
            return !matches!(entry, Memo::No);
        }
        let entry = self.decide(c);
        let entry = match entry {
            Err(v) => Memo::Shed(map[v]),
            Ok(m) => m,
        };
        self.memo.insert(key, entry);
        !matches!(entry, Memo::No)
    }

    /// `Err(v)` carries a shedding vertex in the original labels.
    fn decide(&mut self, c: &SimplicialComplex) -> Result<Memo, usize> {
        if self.prune {
            let dim = c.dim();
            if dim == 0 {
                return Ok(Memo::Base(WitnessStep::ZeroDimensional));
            }
            if dim == 1 {
                return Ok(if c.is_connected() {
                    Memo::Base(WitnessStep::ConnectedGraph)
                } else {
                    Memo::No
                });
            }
            if !c.is_connected() || c.h_vector().has_negative_entry() {
                return Ok(Memo::No);
            }
            let cone = c.cone_points();
            if cone != 0 {
                let apex = cone.trailing_zeros() as usize;
                let link = c.link(1 << apex).expect("cone point");
                return if self.solve(&link) { Err(apex) } else { Ok(Memo::No) };
            }
        }
        for v in members(c.vertex_support()) {
            let del = c.deletion(v).expect("vertex in ground set");
            if !del.is_pure() {
                continue;
            }
            let link = c.link(1 << v).expect("vertex is a face");
            if self.solve(&link) && self.solve(&del) {
                return Err(v);
            }
        }
        Ok(Memo::No)
    }

    fn step_for(&self, c: &SimplicialComplex) -> WitnessStep {
        if c.is_simplex() {
            return WitnessStep::Simplex;
        }
        let (key, map) = c.relabeled_key();
        match self.memo[&key] {
            Memo::Base(step) => step,
            Memo::Shed(cv) => {
                let v = (0..64).find(|&v| map[v] == cv).expect("relabeling is a bijection");
                WitnessStep::Shed(v)
            }
            Memo::No => unreachable!("witness requested for a non-decomposable complex"),
        }
    }

    fn witness(&mut self, c: &SimplicialComplex, out: &mut Vec<(u64, WitnessStep)>) {
        // keys are not canonical, so an isomorphic copy of a solved complex
        // may still be missing from the memo
        let solved = self.solve(c);
        debug_assert!(solved, "witness requested for a non-decomposable complex");
        let step = self.step_for(c);
        out.push((complex_hash(&c.canonical_key()), step));
        if let WitnessStep::Shed(v) = step {
            self.witness(&c.link(1 << v).expect("vertex"), out);
            self.witness(&c.deletion(v).expect("vertex"), out);
        }
    }
}

/// Decides vertex decomposability of a pure complex, memoized on a relabeled
/// facet key, using the dimension, connectivity, h-vector and cone shortcuts.
pub fn is_vertex_decomposable(c: &SimplicialComplex) -> Result<DecompVerdict, DecompError> {
    c.require_pure()?;
    let mut solver = VdSolver::new(true);
    let value = solver.solve(c);
    let witness = value.then(|| {
        let mut out = Vec::new();
        solver.witness(c, &mut out);
        out
    });
    Ok(DecompVerdict { value, witness })
}

/// The bare recursive definition: a simplex, or some vertex whose link and
/// (pure) deletion are both vertex decomposable.
pub fn is_vertex_decomposable_unpruned(c: &SimplicialComplex) -> Result<bool, DecompError> {
    c.require_pure()?;
    Ok(VdSolver::new(false).solve(c))
}

/// Re-runs a decomposition from its witness, checking each recorded step.
pub fn replay_witness(c: &SimplicialComplex, witness: &[(u64, WitnessStep)]) -> bool {
    fn walk(c: &SimplicialComplex, witness: &[(u64, WitnessStep)], pos: &mut usize) -> bool {
        let Some(&(hash, step)) = witness.get(*pos) else {
            return false;
        };
        *pos += 1;
        if hash != complex_hash(&c.canonical_key()) || !c.is_pure() {
            return false;
        }
        match step {
            WitnessStep::Simplex => c.is_simplex(),
            WitnessStep::ZeroDimensional => c.dim() == 0,
            WitnessStep::ConnectedGraph => c.dim() == 1 && c.is_connected(),
            WitnessStep::Shed(v) => {
                if v >= c.ground() || c.vertex_support() >> v & 1 == 0 {
                    return false;
                }
                let link = c.link(1 << v).expect("support vertex");
                let del = c.deletion(v).expect("support vertex");
                walk(&link, witness, pos) && walk(&del, witness, pos)
            }
        }
    }
    let mut pos = 0;
    walk(c, witness, &mut pos) && pos == witness.len()
}
