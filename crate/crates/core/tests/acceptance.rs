//! The acceptance gate: every guarantee the library makes, swept at full
//! size. Each test prints one pass/fail line; run with `--nocapture` to
//! see them all.

use semichain::checks::{
    check_asymptotic_ratios, check_average_bounds, check_component_counts_match_formula,
    check_component_overlap_structure, check_components_cover_solutions, check_counting_identities,
    check_oracle_agreement, check_partition_enumeration_counts, check_point_extension_totality,
    check_reference_table, CheckReport,
};
use semichain::Result;

fn gate(report: Result<CheckReport>) {
    let report = report.expect("check failed to run");
    println!("{}", report.line());
    for failure in &report.failures {
        println!("     - {failure}");
    }
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_reference_table() {
    gate(check_reference_table());
}

#[test]
fn criterion_02_component_counts_match_formula() {
    gate(check_component_counts_match_formula(6, 3));
}

#[test]
fn criterion_03_components_cover_solutions() {
    gate(check_components_cover_solutions(6, 3));
}

#[test]
fn criterion_04_component_overlap_structure() {
    gate(check_component_overlap_structure(6, 3));
}

#[test]
fn criterion_05_oracle_agreement() {
    gate(check_oracle_agreement());
}

#[test]
fn criterion_06_counting_identities() {
    gate(check_counting_identities());
}

#[test]
fn criterion_07_average_bounds() {
    gate(check_average_bounds(12));
}

#[test]
fn criterion_08_asymptotic_ratios() {
    gate(check_asymptotic_ratios());
}

#[test]
fn criterion_09_partition_enumeration_counts() {
    gate(check_partition_enumeration_counts(10));
}

#[test]
fn criterion_10_point_extension_totality() {
    gate(check_point_extension_totality(6, 3));
}
