//! One test per acceptance criterion. Each prints its outcome line and
//! fails when the criterion does not hold.

use gaugelike::acceptance::{self, CriterionOutcome, DEFAULT_SEED};

fn check(c: fn(u64) -> CriterionOutcome) {
    let outcome = c(DEFAULT_SEED);
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn ac01_theta_bijection() {
    check(acceptance::ac1);
}

#[test]
fn ac02_group_laws() {
    check(acceptance::ac2);
}

#[test]
fn ac03_rho_collapse() {
    check(acceptance::ac3);
}

#[test]
fn ac04_worked_example() {
    check(acceptance::ac4);
}

#[test]
fn ac05_mc_correspondence() {
    check(acceptance::ac5);
}

#[test]
fn ac06_brutal_truncation() {
    check(acceptance::ac6);
}

#[test]
fn ac07_sullivan_filtration() {
    check(acceptance::ac7);
}

#[test]
fn ac08_gauge_vs_additive() {
    check(acceptance::ac8);
}

#[test]
fn ac09_bch() {
    check(acceptance::ac9);
}

#[test]
fn ac10_negative_controls() {
    check(acceptance::ac10);
}
