use stepwalk::verify::*;

fn check(r: SuiteResult) {
    assert!(r.passed(), "{} failed on {} cases: {:#?}", r.name, r.cases, r.failures);
    assert!(r.cases > 0, "{} ran no cases", r.name);
}

#[test]
fn finite_dichotomy() {
    check(suite_finite_dichotomy(11, 500));
}

#[test]
fn oracle_equivalence() {
    check(suite_oracle_equivalence(12, 200, 7));
}

#[test]
fn group_structure_agrees_with_relative_interior() {
    check(suite_group_structure(13, 500));
}

#[test]
fn translation_invariance() {
    check(suite_translation_invariance(14, 100));
}

#[test]
fn constraints_only_remove_walks() {
    check(suite_constraint_monotonicity(15, 100));
}

#[test]
fn graphs_without_closed_walks_are_acyclic() {
    check(suite_dag(16, 100));
}

#[test]
fn constrained_units_imply_closed_walks() {
    check(suite_constrained_directions(17, 100));
}

#[test]
fn collinear_pairs_follow_recurrences() {
    check(suite_recurrences(20));
}

#[test]
fn builtin_constraints_are_submonoids() {
    check(suite_constraint_closure(18, 1000));
}

#[test]
fn truncations_agree_with_catalogue() {
    check(suite_truncations());
}
