//! Acceptance checks, one test per criterion. Each prints a single
//! `criterion N [PASS|FAIL] …` line.

use outerlabel::selftest::{self, CriterionReport, SelftestConfig};

fn check(r: CriterionReport) {
    println!("{r}");
    assert!(r.passed, "{r}");
}

#[test]
fn criterion_1_extremal_ladders() {
    check(selftest::criterion_1(&SelftestConfig::full()));
}

#[test]
fn criterion_2_constructive_bound_on_corpus() {
    check(selftest::criterion_2(&SelftestConfig::full()));
}

#[test]
fn criterion_3_exact_lambda_on_corpus() {
    check(selftest::criterion_3(&SelftestConfig::full()));
}

#[test]
fn criterion_4_pattern_extendability() {
    check(selftest::criterion_4(&SelftestConfig::full()));
}

#[test]
fn criterion_5_oracle_equivalence() {
    check(selftest::criterion_5(&SelftestConfig::full()));
}

#[test]
fn criterion_6_branch_greedy() {
    check(selftest::criterion_6(&SelftestConfig::full()));
}

#[test]
fn criterion_7_random_scale() {
    check(selftest::criterion_7(&SelftestConfig::full()));
}

#[test]
fn criterion_8_small_exact_values() {
    check(selftest::criterion_8(&SelftestConfig::full()));
}
