//! Randomized exact checks: field axioms, rank-nullity against a naive oracle,
//! invariance of the combinatorial and algebraic data, Euler's identity, and the
//! Hilbert and numerator identities of computed resolutions.

mod common;

use common::suites;

#[test]
fn field_axioms_hold_exactly() {
    suites::field_axioms(256).unwrap();
}

#[test]
fn rank_nullity_matches_naive_elimination() {
    suites::rank_nullity(256).unwrap();
}

#[test]
fn random_arrangements_satisfy_identities() {
    suites::random_arrangements(256).unwrap();
}

#[test]
fn invariance_under_pgl_reorder_and_scaling() {
    suites::invariance(240).unwrap();
}

#[test]
fn fixtures_satisfy_pair_count_euler_and_resolution_identities() {
    suites::fixture_identities().unwrap();
}
