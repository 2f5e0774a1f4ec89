//! Cross-module invariants at moderate sizes. The acceptance suite in the
//! CLI crate runs the same identities at the full desk-scale sizes; these
//! keep the library crate honest on its own.

use interval_posets::bijection;
use interval_posets::enumeration::{
    brute_count, count_blockwise_posets, count_interval_posets, dissection_count,
    distinct_interval_posets, large_schroeder, small_schroeder, CountMode, DissectionFamily,
    PosetFamily,
};
use interval_posets::permutation::permutations;
use interval_posets::IntervalPoset;
use num_bigint::BigUint;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn interval_poset_counts_three_routes() {
    for n in 2..=7 {
        let formula = count_interval_posets(n).unwrap();
        let brute = brute_count(PosetFamily::All, CountMode::Posets, n).unwrap();
        assert_eq!(formula, big(brute), "formula vs brute at n={n}");
        if n <= 6 {
            let geometric = dissection_count(n + 1, DissectionFamily::FramedQuadFree).unwrap();
            assert_eq!(brute, geometric, "brute vs geometric at n={n}");
        }
    }
}

#[test]
fn tree_counts_two_routes() {
    for n in 2..=7 {
        let brute = brute_count(PosetFamily::Tree, CountMode::Posets, n).unwrap();
        let geometric = dissection_count(n + 1, DissectionFamily::NonCrossingQuadFree).unwrap();
        assert_eq!(brute, geometric, "at n={n}");
    }
}

#[test]
fn blockwise_counts_three_routes() {
    for n in 4..=7 {
        let formula = count_blockwise_posets(n).unwrap();
        let brute = brute_count(PosetFamily::Blockwise, CountMode::Posets, n).unwrap();
        let geometric =
            dissection_count(n + 1, DissectionFamily::NonCrossingTriangleFreeQuadFree).unwrap();
        assert_eq!(formula, big(brute), "formula vs brute at n={n}");
        assert_eq!(brute, geometric, "brute vs geometric at n={n}");
    }
    assert_eq!(
        brute_count(PosetFamily::Blockwise, CountMode::Posets, 7).unwrap(),
        5
    );
}

#[test]
fn binary_counts_align_with_small_schroeder() {
    for n in 2..=7 {
        let brute = brute_count(PosetFamily::Binary, CountMode::Posets, n).unwrap();
        let geometric = dissection_count(n + 1, DissectionFamily::NonCrossing).unwrap();
        assert_eq!(brute, geometric, "at n={n}");
        assert_eq!(big(brute), small_schroeder(n - 1), "schroeder at n={n}");
    }
}

#[test]
fn separable_permutations_align_with_large_schroeder() {
    for n in 1..=7 {
        let count = brute_count(PosetFamily::Binary, CountMode::Permutations, n).unwrap();
        assert_eq!(big(count), large_schroeder(n - 1), "at n={n}");
    }
}

#[test]
fn binary_tree_catalan_identities() {
    use interval_posets::enumeration::catalan;
    for n in 2..=7 {
        let posets = brute_count(PosetFamily::BinaryTree, CountMode::Posets, n).unwrap();
        let perms = brute_count(PosetFamily::BinaryTree, CountMode::Permutations, n).unwrap();
        assert_eq!(big(posets), catalan(n - 1), "posets at n={n}");
        assert_eq!(big(perms), catalan(n - 1) * 2u32, "permutations at n={n}");
    }
}

#[test]
fn distinct_posets_all_validate_and_round_trip() {
    for n in 1..=7 {
        let posets = distinct_interval_posets(n).unwrap();
        assert_eq!(
            posets.len() as u64,
            brute_count(PosetFamily::All, CountMode::Posets, n).unwrap()
        );
        for p in &posets {
            assert_eq!(p.validate(), Ok(()));
            if n >= 2 {
                let d = bijection::dissection_of(p);
                assert_eq!(&bijection::poset_of(&d).unwrap(), p);
            }
        }
    }
}

#[test]
fn restriction_suites_hold_at_spec_sizes() {
    use interval_posets::verification::{run_suite, Suite};
    for suite in [
        Suite::TreeRestriction,
        Suite::BlockwiseRestriction,
        Suite::BinaryRestriction,
    ] {
        let report = run_suite(suite, 8);
        assert!(
            report.passed(),
            "suite {} failed: {:?}",
            report.suite.name(),
            report.failures.first()
        );
    }
}

#[test]
fn dual_claw_iff_simple_up_to_eight() {
    for n in 4..=8 {
        for q in permutations(n) {
            assert_eq!(
                IntervalPoset::of(&q).classify().is_dual_claw,
                q.is_simple(),
                "at {q}"
            );
        }
    }
}

#[test]
fn poset_identity_is_interval_set_equality() {
    // many permutations share a poset; counting distinct sets is the whole
    // point of the poset-mode counters
    let mut seen = std::collections::HashMap::new();
    for q in permutations(4) {
        seen.entry(IntervalPoset::of(&q).intervals().clone())
            .or_insert_with(Vec::new)
            .push(q.to_string());
    }
    assert_eq!(seen.len(), 12);
    let claw = IntervalPoset::trivial(4);
    assert_eq!(seen[claw.intervals()], vec!["2413", "3142"]);
}
