//! Optimized decision procedures against their definitional versions.

use circulant_topology::circulant::{build_circulant, enumerate_connection_sets, CirculantGraph};
use circulant_topology::decomp::{
    check_shelling, find_shelling_with, is_vertex_decomposable, is_vertex_decomposable_unpruned,
    replay_witness, ShellingCheck, ShellingOptions, ShellingOutcome,
};
use circulant_topology::homology::{
    is_buchsbaum, is_cohen_macaulay, is_cohen_macaulay_exhaustive, is_cohen_macaulay_with, Field,
    Symmetry,
};
use circulant_topology::simplex::{independence_complex, SimplicialComplex};
use proptest::prelude::*;

fn well_covered(n_max: usize) -> Vec<(CirculantGraph, SimplicialComplex)> {
    (3..=n_max)
        .flat_map(enumerate_connection_sets)
        .map(build_circulant)
        .map(|g| {
            let ind = independence_complex(&g);
            (g, ind)
        })
        .filter(|(_, ind)| ind.is_pure())
        .collect()
}

#[test]
fn symmetric_cm_matches_exhaustive_reisner() {
    for (g, ind) in well_covered(12) {
        let sym = Symmetry::circulant(&g);
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let fast = is_cohen_macaulay_with(&ind, field, &sym).unwrap();
            let slow = is_cohen_macaulay_exhaustive(&ind, field).unwrap();
            assert_eq!(fast, slow, "{} over {field}", g.spec());
        }
    }
}

#[test]
fn buchsbaum_at_one_vertex_matches_all_vertices() {
    for (g, ind) in well_covered(12) {
        let sym = Symmetry::circulant(&g);
        assert_eq!(
            is_buchsbaum(&ind, Field::Rational, Some(&sym)).unwrap(),
            is_buchsbaum(&ind, Field::Rational, None).unwrap(),
            "{}",
            g.spec()
        );
    }
}

#[test]
fn pruned_vd_matches_definition_and_witnesses_replay() {
    for (g, ind) in well_covered(10) {
        let verdict = is_vertex_decomposable(&ind).unwrap();
        assert_eq!(verdict.value, is_vertex_decomposable_unpruned(&ind).unwrap(), "{}", g.spec());
        if let Some(w) = verdict.witness {
            assert!(replay_witness(&ind, &w), "{}", g.spec());
        }
    }
}

#[test]
fn pruned_shelling_search_matches_plain_search() {
    for (g, ind) in well_covered(10) {
        let plain = ShellingOptions {
            symmetry: None,
            prune: false,
            ..ShellingOptions::default()
        };
        let tuned = ShellingOptions {
            symmetry: Some(Symmetry::circulant(&g)),
            ..ShellingOptions::default()
        };
        let a = find_shelling_with(&ind, &plain).unwrap();
        let b = find_shelling_with(&ind, &tuned).unwrap();
        assert!(!matches!(a, ShellingOutcome::BudgetExceeded { .. }), "{}", g.spec());
        assert_eq!(a.is_found(), b.is_found(), "{}", g.spec());
        for outcome in [a, b] {
            if let ShellingOutcome::Found(cert) = outcome {
                assert_eq!(check_shelling(&ind, &cert).unwrap(), ShellingCheck::Valid);
            }
        }
    }
}

fn pure_complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=6)
        .prop_flat_map(|ground| (Just(ground), 1..=3usize))
        .prop_flat_map(|(ground, k)| {
            let subsets: Vec<u64> = (0u64..1 << ground)
                .filter(|m| m.count_ones() as usize == k)
                .collect();
            let len = subsets.len();
            prop::sample::subsequence(subsets, 1..=len)
                .prop_map(move |f| SimplicialComplex::from_faces(ground, f).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn recursive_cm_matches_exhaustive_on_random_complexes(c in pure_complex()) {
        for field in [Field::Rational, Field::Prime(2)] {
            prop_assert_eq!(
                is_cohen_macaulay(&c, field).unwrap(),
                is_cohen_macaulay_exhaustive(&c, field).unwrap()
            );
        }
    }

    #[test]
    fn vd_and_shelling_agree_with_plain_versions_on_random_complexes(c in pure_complex()) {
        prop_assert_eq!(
            is_vertex_decomposable(&c).unwrap().value,
            is_vertex_decomposable_unpruned(&c).unwrap()
        );
        let plain = ShellingOptions { prune: false, ..ShellingOptions::default() };
        let a = find_shelling_with(&c, &plain).unwrap().is_found();
        let b = find_shelling_with(&c, &ShellingOptions::default()).unwrap().is_found();
        prop_assert_eq!(a, b);
        // vertex decomposable implies shellable implies Cohen-Macaulay
        if is_vertex_decomposable(&c).unwrap().value {
            prop_assert!(a);
        }
        if a {
            prop_assert!(is_cohen_macaulay(&c, Field::Rational).unwrap());
        }
    }
}
