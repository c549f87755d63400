//! Per-graph classification of `Ind(C_n(S))` into the hierarchy
//! vertex decomposable ⇒ shellable ⇒ Cohen-Macaulay ⇒ Buchsbaum ⇒ pure,
//! and closed-form predictions for three infinite families.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circulant::{
    build_circulant, canonical_representative, enumerate_connection_sets, find_isomorphism,
    is_graph_connected,
    CirculantGraph, ConnectionSet, GraphError, OnePairedSpec, VertexSet,
};
use crate::decomp::{
    find_shelling_with, is_vertex_decomposable, DecompError, ShellingOptions, ShellingOutcome,
    DEFAULT_SHELLING_BUDGET,
};
use crate::homology::{is_buchsbaum, is_cohen_macaulay_with, Field, Symmetry};
use crate::simplex::{
    independence_complex, maximal_cliques, ComplexError, FVector, HVector,
    SimplicialComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{0} is not well-covered")]
    NotWellCovered(ConnectionSet),
    #[error("CIS definition and the alpha*omega = n test disagree on {0}")]
    CisMismatch(ConnectionSet),
    #[error("invalid family parameters: {0}")]
    FamilyParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}

/// Strongest property of the independence complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// Vertex decomposable.
    V,
    /// Shellable, not vertex decomposable.
    S,
    /// Cohen-Macaulay, not shellable.
    CM,
    /// Buchsbaum, not Cohen-Macaulay.
    B,
    /// Pure, not Buchsbaum.
    N,
    #[serde(rename = "not-well-covered")]
    NotWellCovered,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::V => "V",
            Label::S => "S",
            Label::CM => "CM",
            Label::B => "B",
            Label::N => "N",
            Label::NotWellCovered => "not-well-covered",
        }
    }

    pub fn is_vertex_decomposable(self) -> bool {
        self == Label::V
    }

    pub fn is_shellable(self) -> bool {
        self <= Label::S
    }

    pub fn is_cohen_macaulay(self) -> bool {
        self <= Label::CM
    }

    pub fn is_buchsbaum(self) -> bool {
        self <= Label::B
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "V" => Label::V,
            "S" => Label::S,
            "CM" => Label::CM,
            "B" => Label::B,
            "N" => Label::N,
            "not-well-covered" | "-" => Label::NotWellCovered,
            _ => return Err(format!("unknown label {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// The shelling search ran out of budget. The label is the strongest
    /// property actually proved (CM), not a guess.
    UnknownBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    #[serde(flatten)]
    pub spec: ConnectionSet,
    pub connected: bool,
    pub well_covered: bool,
    pub alpha: usize,
    pub omega: usize,
    pub label: Label,
    #[serde(rename = "one_wc")]
    pub one_well_covered: bool,
    pub cis: bool,
    pub f: FVector,
    pub h: HVector,
    pub field: Field,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub field: Field,
    pub shelling_budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            field: Field::Rational,
            shelling_budget: DEFAULT_SHELLING_BUDGET,
        }
    }
}

impl ClassifyOptions {
    pub fn with_field(field: Field) -> Self {
        Self {
            field,
            ..Self::default()
        }
    }
}

pub fn classify(g: &CirculantGraph, field: Field) -> Result<ClassificationRecord, ClassifyError> {
    classify_with(g, &ClassifyOptions::with_field(field))
}

/// Purity, then Buchsbaum (link of vertex 0), then Cohen-Macaulay (skipped
/// when `h` has a negative entry), then vertex decomposability, and only if
/// that fails the shelling search.
pub fn classify_with(
    g: &CirculantGraph,
    opts: &ClassifyOptions,
) -> Result<ClassificationRecord, ClassifyError> {
    let ind = independence_complex(g);
    let f = ind.f_vector();
    let h = ind.h_vector();
    let alpha = (ind.dim() + 1) as usize;
    let cliques = maximal_cliques(g);
    let omega = cliques.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let cis = cis_from_parts(g, &ind, &cliques)?;
    let well_covered = ind.is_pure();
    let mut status = Status::Ok;
    let (label, one_well_covered) = if !well_covered {
        (Label::NotWellCovered, false)
    } else {
        let one_wc = deletion_is_pure(&ind)?;
        let symmetry = Symmetry::circulant(g);
        let label = if !is_buchsbaum(&ind, opts.field, Some(&symmetry))? {
            Label::N
        } else if h.has_negative_entry() || !is_cohen_macaulay_with(&ind, opts.field, &symmetry)? {
            Label::B
        } else if is_vertex_decomposable(&ind)?.value {
            Label::V
        } else {
            let shelling = ShellingOptions {
                budget: opts.shelling_budget,
                symmetry: Some(symmetry),
                prune: true,
            };
            match find_shelling_with(&ind, &shelling)? {
                ShellingOutcome::Found(_) => Label::S,
                ShellingOutcome::NotShellable => Label::CM,
                ShellingOutcome::BudgetExceeded { .. } => {
                    status = Status::UnknownBudget;
                    Label::CM
                }
            }
        };
        (label, one_wc)
    };
    Ok(ClassificationRecord {
        spec: g.spec().clone(),
        connected: is_graph_connected(g),
        well_covered,
        alpha,
        omega,
        label,
        one_well_covered,
        cis,
        f,
        h,
        field: opts.field,
        status,
    })
}

fn deletion_is_pure(ind: &SimplicialComplex) -> Result<bool, ComplexError> {
    if ind.ground() == 0 {
        return Ok(true);
    }
    Ok(ind.deletion(0)?.is_pure())
}

/// `G \ {0}` is well-covered. By vertex-transitivity this is the same as
/// `G \ {x}` well-covered for every `x`.
pub fn is_one_well_covered(g: &CirculantGraph) -> Result<bool, ClassifyError> {
    let ind = independence_complex(g);
    if !ind.is_pure() {
        return Err(ClassifyError::NotWellCovered(g.spec().clone()));
    }
    Ok(deletion_is_pure(&ind)?)
}

/// Every maximal clique meets every maximal independent set.
pub fn is_cis(g: &CirculantGraph) -> Result<bool, ClassifyError> {
    cis_from_parts(g, &independence_complex(g), &maximal_cliques(g))
}

fn cis_from_parts(
    g: &CirculantGraph,
    ind: &SimplicialComplex,
    cliques: &[VertexSet],
) -> Result<bool, ClassifyError> {
    let direct = cliques
        .iter()
        .all(|&c| ind.facets().iter().all(|&i| c & i != 0));
    let sizes_uniform = |sets: &[VertexSet]| sets.windows(2).all(|w| w[0].count_ones() == w[1].count_ones());
    let characterized = sizes_uniform(ind.facets())
        && sizes_uniform(cliques)
        && match (ind.facets().first(), cliques.first()) {
            (Some(i), Some(c)) => (i.count_ones() * c.count_ones()) as usize == g.n(),
            _ => false,
        };
    if direct != characterized {
        return Err(ClassifyError::CisMismatch(g.spec().clone()));
    }
    Ok(direct)
}

/// What a closed-form theorem says about a graph. Fields the theorem is
/// silent on are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPrediction {
    pub spec: ConnectionSet,
    pub well_covered: bool,
    pub label: Label,
    pub alpha: Option<usize>,
    pub omega: Option<usize>,
    pub cis: Option<bool>,
    pub f: Option<FVector>,
    pub h: Option<HVector>,
    pub facets: Option<Vec<VertexSet>>,
}

impl FamilyPrediction {
    fn new(spec: ConnectionSet, well_covered: bool, label: Label) -> Self {
        Self {
            spec,
            well_covered,
            label,
            alpha: None,
            omega: None,
            cis: None,
            f: None,
            h: None,
            facets: None,
        }
    }

    /// Names of the predicted fields that disagree with `record`.
    pub fn mismatches(&self, record: &ClassificationRecord) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.spec != record.spec {
            out.push("spec");
        }
        if self.well_covered != record.well_covered {
            out.push("well_covered");
        }
        if self.label != record.label {
            out.push("label");
        }
        if self.alpha.is_some_and(|a| a != record.alpha) {
            out.push("alpha");
        }
        if self.omega.is_some_and(|w| w != record.omega) {
            out.push("omega");
        }
        if self.cis.is_some_and(|c| c != record.cis) {
            out.push("cis");
        }
        if self.f.as_ref().is_some_and(|f| *f != record.f) {
            out.push("f");
        }
        if self.h.as_ref().is_some_and(|h| *h != record.h) {
            out.push("h");
        }
        out
    }
}

/// `C_n(d+1, ..., n/2)`, the complement of the `d`-th power of the cycle.
pub fn family_complement_power(n: usize, d: usize) -> Result<FamilyPrediction, ClassifyError> {
    if d == 0 || n < 2 * d + 2 {
        return Err(ClassifyError::FamilyParameters(format!(
            "need d >= 1 and n >= 2d+2, got n = {n}, d = {d}"
        )));
    }
    let spec = ConnectionSet::new(n, d + 1..=n / 2)?;
    let well_covered = n > 3 * d || n == 2 * d + 2;
    let label = if !well_covered {
        Label::NotWellCovered
    } else if n == 2 * d + 2 || (d == 1 && n > 3) {
        Label::V
    } else {
        Label::B
    };
    let mut p = FamilyPrediction::new(spec, well_covered, label);
    if well_covered {
        p.alpha = Some(d + 1);
    }
    if n > 3 * d {
        // f(x) = 1 + n x (1 + x)^d, h(x) = (1 - x)^{d+1} + n x
        let mut f = vec![1u64];
        f.extend((0..=d).map(|j| n as u64 * choose(d, j)));
        let mut h: Vec<i64> = (0..=d + 1)
            .map(|i| {
                let c = choose(d + 1, i) as i64;
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        h[1] += n as i64;
        p.f = Some(FVector(f));
        p.h = Some(HVector(h));
    }
    Ok(p)
}

/// `C_n({1, ..., n/2} \ {i})`.
pub fn family_remove_one(n: usize, i: usize) -> Result<FamilyPrediction, ClassifyError> {
    if n < 3 || i == 0 || i > n / 2 {
        return Err(ClassifyError::FamilyParameters(format!(
            "need n >= 3 and 1 <= i <= n/2, got n = {n}, i = {i}"
        )));
    }
    let spec = ConnectionSet::new(n, (1..=n / 2).filter(|&s| s != i))?;
    let label = if i.gcd(&n) == 1 { Label::V } else { Label::B };
    let mut p = FamilyPrediction::new(spec, true, label);
    if 3 * i == n {
        p.alpha = Some(3);
        p.facets = Some(
            (0..i)
                .map(|j| 1u64 << j | 1 << (j + i) | 1 << (j + 2 * i))
                .collect(),
        );
    } else {
        p.alpha = Some(2);
    }
    Ok(p)
}

/// The one-paired circulant `C(n; a, b)`.
///
/// With `b = 1` the graph is edgeless and its complex a simplex, so the label
/// is `V` whatever `a` is.
pub fn family_one_paired(spec: OnePairedSpec) -> FamilyPrediction {
    let (n, a, b) = (spec.n(), spec.a(), spec.b());
    let label = if b == 1 || n == a * b {
        Label::V
    } else if a == 1 {
        Label::B
    } else {
        Label::N
    };
    let mut p = FamilyPrediction::new(spec.connection_set(), true, label);
    p.alpha = Some(n / b);
    p.omega = Some(b);
    p.cis = Some(true);
    if a == 1 {
        let m = n / b;
        let mut f = vec![1u64];
        f.extend((1..=m).map(|j| choose(m, j) * b as u64));
        p.f = Some(FVector(f));
    }
    p
}

fn choose(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Well-covered connected cubic circulants on at most `cap` vertices, one
/// per multiplier class, in census order. Cubic means `S = {s, n/2}` with
/// `n` even.
pub fn cubic_census(cap: usize, field: Field) -> Result<Vec<ClassificationRecord>, ClassifyError> {
    let mut specs = Vec::new();
    for n in (4..=cap).step_by(2) {
        for s in 1..n / 2 {
            if s.gcd(&(n / 2)) != 1 {
                continue;
            }
            let spec = canonical_representative(&ConnectionSet::new(n, [s, n / 2])?);
            if !specs.contains(&spec) {
                specs.push(spec);
            }
        }
    }
    specs.sort_by(|a, b| a.census_cmp(b));
    let mut out = Vec::new();
    for spec in specs {
        let record = classify(&build_circulant(spec), field)?;
        if record.well_covered {
            out.push(record);
        }
    }
    Ok(out)
}

/// Classifies one representative per multiplier class for every `n` in
/// `n_min..=n_max`, in parallel on the current rayon pool. Output is in
/// census order.
pub fn census(
    n_min: usize,
    n_max: usize,
    opts: &ClassifyOptions,
    well_covered_only: bool,
) -> Result<Vec<ClassificationRecord>, ClassifyError> {
    let specs: Vec<ConnectionSet> = (n_min.max(1)..=n_max)
        .flat_map(enumerate_connection_sets)
        .collect();
    let mut records = specs
        .into_par_iter()
        .map(|spec| classify_with(&build_circulant(spec), opts))
        .collect::<Result<Vec<_>, _>>()?;
    if well_covered_only {
        records.retain(|r| r.well_covered);
    }
    records.sort_by(|a, b| a.spec.census_cmp(&b.spec));
    Ok(records)
}

/// Collapses records whose graphs are isomorphic by a map that is not a
/// multiplier, keeping the first in census order. Returns the survivors and
/// the merged pairs `(dropped, kept)`. Isomorphic graphs have isomorphic
/// complexes, so merged records must agree on every invariant; pairs that do
/// not are kept and reported as conflicts.
pub fn merge_isomorphic(records: Vec<ClassificationRecord>) -> IsomorphismMerge {
    let mut out = IsomorphismMerge::default();
    let mut kept_graphs: Vec<CirculantGraph> = Vec::new();
    for record in records {
        let g = build_circulant(record.spec.clone());
        let twin = out.kept.iter().zip(&kept_graphs).position(|(k, kg)| {
            k.spec.n() == record.spec.n() && find_isomorphism(&g, kg).is_some()
        });
        match twin {
            Some(i) => {
                let kept = &out.kept[i];
                let same = (kept.connected, kept.well_covered, kept.alpha, kept.omega)
                    == (record.connected, record.well_covered, record.alpha, record.omega)
                    && (kept.label, kept.one_well_covered, kept.cis, &kept.f)
                        == (record.label, record.one_well_covered, record.cis, &record.f);
                if same {
                    out.merged.push((record.spec.clone(), kept.spec.clone()));
                } else {
                    out.conflicts.push((record.spec.clone(), kept.spec.clone()));
                    out.kept.push(record);
                    kept_graphs.push(g);
                }
            }
            None => {
                out.kept.push(record);
                kept_graphs.push(g);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsomorphismMerge {
    pub kept: Vec<ClassificationRecord>,
    pub merged: Vec<(ConnectionSet, ConnectionSet)>,
    pub conflicts: Vec<(ConnectionSet, ConnectionSet)>,
}

/// Each property of a pure complex evaluated on its own, with no
/// short-circuits between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyChecks {
    pub buchsbaum: bool,
    pub cohen_macaulay: bool,
    /// `None` when the search ran out of budget.
    pub shellable: Option<bool>,
    pub vertex_decomposable: bool,
}

impl PropertyChecks {
    /// Violations of VD ⇒ shellable ⇒ CM ⇒ Buchsbaum.
    pub fn hierarchy_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.vertex_decomposable && self.shellable == Some(false) {
            out.push("VD but not shellable");
        }
        if self.shellable == Some(true) && !self.cohen_macaulay {
            out.push("shellable but not CM");
        }
        if self.cohen_macaulay && !self.buchsbaum {
            out.push("CM but not Buchsbaum");
        }
        out
    }
}

pub fn property_checks(
    g: &CirculantGraph,
    opts: &ClassifyOptions,
) -> Result<PropertyChecks, ClassifyError> {
    let ind = independence_complex(g);
    ind.require_pure()?;
    let symmetry = Symmetry::circulant(g);
    let shelling = ShellingOptions {
        budget: opts.shelling_budget,
        symmetry: Some(symmetry.clone()),
        prune: true,
    };
    Ok(PropertyChecks {
        buchsbaum: is_buchsbaum(&ind, opts.field, Some(&symmetry))?,
        cohen_macaulay: is_cohen_macaulay_with(&ind, opts.field, &symmetry)?,
        shellable: match find_shelling_with(&ind, &shelling)? {
            ShellingOutcome::Found(_) => Some(true),
            ShellingOutcome::NotShellable => Some(false),
            ShellingOutcome::BudgetExceeded { .. } => None,
        },
        vertex_decomposable: is_vertex_decomposable(&ind)?.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, s: &[usize]) -> CirculantGraph {
        build_circulant(ConnectionSet::new(n, s.iter().copied()).unwrap())
    }

    fn label(n: usize, s: &[usize]) -> Label {
        classify(&g(n, s), Field::Rational).unwrap().label
    }

    #[test]
    fn headline_examples() {
        let r = classify(&g(16, &[1, 4, 8]), Field::Rational).unwrap();
        assert_eq!((r.label, r.one_well_covered, r.status), (Label::S, true, Status::Ok));
        let r = classify(&g(10, &[1, 2, 3, 5]), Field::Rational).unwrap();
        assert_eq!((r.label, r.one_well_covered), (Label::B, true));
        let r = classify(&g(8, &[2]), Field::Rational).unwrap();
        assert_eq!((r.label, r.connected), (Label::N, false));
    }

    #[test]
    fn small_labels() {
        assert_eq!(label(4, &[1]), Label::B);
        assert_eq!(label(10, &[1, 4]), Label::N);
        assert_eq!(label(3, &[1]), Label::V);
        assert_eq!(label(8, &[1]), Label::NotWellCovered);
        let r = classify(&g(4, &[1]), Field::Rational).unwrap();
        assert!(r.connected && r.well_covered && r.alpha == 2);
    }

    #[test]
    fn one_well_covered_examples() {
        assert!(is_one_well_covered(&g(10, &[1, 2, 3, 5])).unwrap());
        assert!(!is_one_well_covered(&g(7, &[1])).unwrap());
        assert!(is_one_well_covered(&g(4, &[2])).unwrap());
        assert!(matches!(
            is_one_well_covered(&g(8, &[1])),
            Err(ClassifyError::NotWellCovered(_))
        ));
    }

    #[test]
    fn cis_examples() {
        assert!(is_cis(&g(12, &[2, 4])).unwrap());
        // every edge of the 4-cycle meets both {0,2} and {1,3}
        assert!(is_cis(&g(4, &[1])).unwrap());
        assert!(!is_cis(&g(5, &[1])).unwrap());
        assert!(is_cis(&g(3, &[1])).unwrap());
    }

    #[test]
    fn cis_definitions_agree_everywhere_small() {
        for n in 3..=14 {
            for spec in enumerate_connection_sets(n) {
                is_cis(&build_circulant(spec)).unwrap();
            }
        }
    }

    #[test]
    fn complement_power_examples() {
        let p = family_complement_power(7, 2).unwrap();
        assert!(p.well_covered);
        assert_eq!(p.label, Label::B);
        assert_eq!(p.f, Some(FVector(vec![1, 7, 14, 7])));
        assert_eq!(p.h, Some(HVector(vec![1, 4, 3, -1])));
        assert_eq!(family_complement_power(6, 2).unwrap().label, Label::V);
        assert_eq!(family_complement_power(6, 1).unwrap().label, Label::V);
        assert!(family_complement_power(5, 2).is_err());
    }

    #[test]
    fn remove_one_examples() {
        let p = family_remove_one(10, 4).unwrap();
        assert_eq!((p.label, p.spec.generators()), (Label::B, &[1, 2, 3, 5][..]));
        assert_eq!(family_remove_one(13, 6).unwrap().label, Label::V);
        let p = family_remove_one(3, 1).unwrap();
        assert_eq!((p.label, p.alpha), (Label::V, Some(3)));
        assert_eq!(p.facets, Some(vec![0b111]));
        assert!(family_remove_one(10, 6).is_err());
    }

    #[test]
    fn one_paired_examples() {
        let op = |n, a, b| family_one_paired(OnePairedSpec::new(n, a, b).unwrap());
        assert_eq!(op(8, 2, 2).label, Label::N);
        let p = op(6, 1, 2);
        assert_eq!(p.label, Label::B);
        assert_eq!(p.f, Some(FVector(vec![1, 6, 6, 2])));
        assert_eq!(op(4, 2, 2).label, Label::V);
        assert_eq!(op(9, 3, 1).label, Label::V);
    }

    #[test]
    fn families_agree_with_classification() {
        for n in 3..=12 {
            for i in 1..=n / 2 {
                let p = family_remove_one(n, i).unwrap();
                let r = classify(&build_circulant(p.spec.clone()), Field::Rational).unwrap();
                assert_eq!(p.mismatches(&r), Vec::<&str>::new(), "remove {i} from n = {n}");
            }
            for d in 1..=3 {
                if n >= 2 * d + 2 {
                    let p = family_complement_power(n, d).unwrap();
                    let r = classify(&build_circulant(p.spec.clone()), Field::Rational).unwrap();
                    assert_eq!(p.mismatches(&r), Vec::<&str>::new(), "n = {n}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn cubic_census_up_to_ten() {
        let found: Vec<(String, Label)> = cubic_census(10, Field::Rational)
            .unwrap()
            .into_iter()
            .map(|r| (r.spec.to_string(), r.label))
            .collect();
        let expected = [
            ("4:1,2", Label::V),
            ("6:1,3", Label::B),
            ("6:2,3", Label::V),
            ("8:1,4", Label::B),
            ("10:2,5", Label::B),
        ];
        let expected: Vec<(String, Label)> =
            expected.iter().map(|(s, l)| (s.to_string(), *l)).collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn record_json_uses_stable_names() {
        let r = classify(&g(4, &[1]), Field::Rational).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "n", "s", "connected", "well_covered", "alpha", "omega", "label", "one_wc", "cis",
            "f", "h", "field", "status",
        ] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(json["label"], "B");
        assert_eq!(json["field"], "QQ");
        assert_eq!(json["status"], "ok");
        let back: ClassificationRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
