//! Runnable verification suites.
//!
//! Each check sweeps one guarantee of the library over an exhaustive
//! range and reports what it covered and what, if anything, failed. The
//! acceptance tests and the command-line `verify` command both run these.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::counting::{
    asymptotic_ratio, aux_sum, average_component_bounds, average_component_count,
    average_component_count_order2, irreducible_component_count, labelled_stirling, stirling2,
    stirling2_explicit,
};
use crate::error::Result;
use crate::oracle::all_algebraic_sets;
use crate::partition::{
    decompose, enumerate_ordered_partitions, extend_point_to_partition, is_component_partition,
    redundancy_report,
};
use crate::semilattice::Chain;
use crate::solution::{solve, AlgebraicSet};
use crate::table::{reference_table, TableRow};
use crate::term::{classify, enumerate_equations, EquationClass};

/// How many failure descriptions a report keeps verbatim.
const MAX_REPORTED_FAILURES: usize = 8;

/// Outcome of one verification sweep.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    /// What the sweep covered, e.g. an equation count.
    pub detail: String,
    /// First few failure descriptions.
    pub failures: Vec<String>,
    pub failure_count: u64,
}

impl CheckReport {
    fn new(name: &'static str) -> CheckReport {
        CheckReport {
            name,
            passed: true,
            detail: String::new(),
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn fail(&mut self, message: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED_FAILURES {
            self.failures.push(message);
        }
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }

    fn finish(mut self, detail: String) -> CheckReport {
        self.detail = detail;
        self
    }

    /// One-line summary in the form `ok name: detail`.
    pub fn line(&self) -> String {
        if self.passed {
            format!("ok   {}: {}", self.name, self.detail)
        } else {
            format!(
                "FAIL {}: {} ({} failures, first: {})",
                self.name,
                self.detail,
                self.failure_count,
                self.failures
                    .first()
                    .map(String::as_str)
                    .unwrap_or("none recorded")
            )
        }
    }
}

fn sweep_regimes(max_n: usize, max_l: u32) -> Vec<(usize, Chain)> {
    let mut regimes = Vec::new();
    for l in 2..=max_l {
        for n in (l as usize + 1)..=max_n {
            regimes.push((n, Chain::new(l).unwrap()));
        }
    }
    regimes
}

/// The 13-row component table for three variables over the two-element
/// chain: row counts, both totals, and the exact average.
pub fn check_reference_table() -> Result<CheckReport> {
    let mut report = CheckReport::new("reference-table");
    let table = reference_table()?;
    let counts: Vec<u64> = table.rows().iter().map(TableRow::component_count).collect();
    let expected: Vec<u64> = vec![6, 3, 3, 3, 2, 2, 2, 4, 4, 4, 5, 5, 5];
    report.check(counts == expected, || {
        format!("row counts {counts:?}, expected {expected:?}")
    });
    report.check(table.equation_total() == 25, || {
        format!("covers {} equations, expected 25", table.equation_total())
    });
    report.check(table.component_sum() == 90, || {
        format!("component sum {}, expected 90", table.component_sum())
    });
    let average = table.average();
    let expected_avg = BigRational::new(BigInt::from(18), BigInt::from(5));
    report.check(average == expected_avg, || {
        format!("average {average}, expected 18/5")
    });
    Ok(report.finish(format!(
        "{} rows over {} equations, average {}",
        table.rows().len(),
        table.equation_total(),
        table.average()
    )))
}

/// Decomposition sizes match the closed-form component count for every
/// equation with chain order `2..=max_l` and `l < n <= max_n`.
pub fn check_component_counts_match_formula(max_n: usize, max_l: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("component-count-formula");
    let mut checked = 0u64;
    for (n, chain) in sweep_regimes(max_n, max_l) {
        for eq in enumerate_equations(n as u32)? {
            let got = decompose(&eq, chain, n)?.len();
            let want = irreducible_component_count(classify(&eq, n as u32)?, chain.order())?;
            checked += 1;
            report.check(BigInt::from(got) == want, || {
                format!(
                    "n={n} l={}: {eq}: {got} components, formula {want}",
                    chain.order()
                )
            });
        }
    }
    Ok(report.finish(format!("{checked} equations decomposed and counted")))
}

/// The components of every equation in the sweep cover its solution set
/// exactly.
pub fn check_components_cover_solutions(max_n: usize, max_l: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("component-coverage");
    let mut checked = 0u64;
    for (n, chain) in sweep_regimes(max_n, max_l) {
        for eq in enumerate_equations(n as u32)? {
            let solutions = solve(&eq, chain, n)?;
            let mut union = AlgebraicSet::from_points(chain, n, &[])?;
            for component in decompose(&eq, chain, n)? {
                union = union.union(&component.set)?;
            }
            checked += 1;
            report.check(union == solutions, || {
                format!(
                    "n={n} l={}: {eq}: union has {} points, solution set {}",
                    chain.order(),
                    union.len(),
                    solutions.len()
                )
            });
        }
    }
    Ok(report.finish(format!(
        "{checked} solution sets covered by their components"
    )))
}

/// The overlap structure of the components of every equation in the
/// sweep: diagonal-only mutual intersection, one exclusive canonical
/// point per component, pairwise isomorphism, and the closed-form size.
pub fn check_component_overlap_structure(max_n: usize, max_l: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("component-overlap");
    let mut checked = 0u64;
    for (n, chain) in sweep_regimes(max_n, max_l) {
        for eq in enumerate_equations(n as u32)? {
            let overlap = redundancy_report(&eq, chain, n)?;
            checked += 1;
            report.check(overlap.intersection_is_diagonal, || {
                format!(
                    "n={n} l={}: {eq}: intersection is not the diagonal",
                    chain.order()
                )
            });
            report.check(overlap.exclusive_residues_are_canonical, || {
                format!(
                    "n={n} l={}: {eq}: some exclusive residue is not the canonical point",
                    chain.order()
                )
            });
            report.check(overlap.components_pairwise_isomorphic, || {
                format!(
                    "n={n} l={}: {eq}: components are not pairwise isomorphic",
                    chain.order()
                )
            });
            report.check(overlap.sizes_match_formula, || {
                format!(
                    "n={n} l={}: {eq}: component sizes off the closed form",
                    chain.order()
                )
            });
        }
    }
    Ok(report.finish(format!(
        "{checked} equations with verified component overlap"
    )))
}

/// Partition-induced components agree with the components found by
/// exhaustive search over the full lattice of algebraic sets, for the
/// regimes small enough to materialize that lattice.
pub fn check_oracle_agreement() -> Result<CheckReport> {
    let mut report = CheckReport::new("oracle-agreement");
    let mut checked = 0u64;
    for (n, l) in [(3usize, 2u32), (4, 2), (4, 3)] {
        let chain = Chain::new(l)?;
        let lattice = all_algebraic_sets(chain, n)?;
        for eq in enumerate_equations(n as u32)? {
            let solutions = solve(&eq, chain, n)?;
            let mut expected = lattice.irreducible_components(&solutions)?;
            let mut got: Vec<AlgebraicSet> = decompose(&eq, chain, n)?
                .into_iter()
                .map(|c| c.set)
                .collect();
            expected.sort_by_key(AlgebraicSet::points);
            got.sort_by_key(AlgebraicSet::points);
            checked += 1;
            report.check(got == expected, || {
                format!(
                    "n={n} l={l}: {eq}: {} partition components vs {} from the lattice",
                    got.len(),
                    expected.len()
                )
            });
        }
    }
    Ok(report.finish(format!(
        "{checked} equations matched against the exhaustive lattice"
    )))
}

/// The exact counting identities: the averaging formula against the
/// definitional weighted sum, the order-2 closed form, the auxiliary-sum
/// closed form at order 2, vanishing at the boundary class, and the two
/// Stirling computations against each other.
pub fn check_counting_identities() -> Result<CheckReport> {
    let mut report = CheckReport::new("counting-identities");

    let mut averages = 0u64;
    for n in 2u32..=9 {
        for l in 1..n {
            let direct = average_component_count(n, l)?;
            let mut weighted = BigRational::from(BigInt::from(0));
            for k1 in 0..=n {
                for k2 in 0..=n - k1 {
                    let class = EquationClass::new(k1, k2, n)?;
                    if !class.is_realizable() {
                        continue;
                    }
                    let count = crate::term::count_equations(class)?;
                    let per_class = irreducible_component_count(class, l)?;
                    weighted += BigRational::from(count * per_class);
                }
            }
            let equations = BigInt::from(3u32).pow(n) - 2;
            weighted /= BigRational::from(equations);
            averages += 1;
            report.check(direct == weighted, || {
                format!("average({n}, {l}) = {direct}, weighted sum {weighted}")
            });
        }
    }

    for n in 3u32..=20 {
        let general = average_component_count(n, 2)?;
        let closed = average_component_count_order2(n)?;
        report.check(general == closed, || {
            format!("order-2 closed form at n={n}: {closed} vs {general}")
        });
    }

    for n in 1u32..=20 {
        let value = aux_sum(n, 2)?;
        let closed = BigInt::from(4u32).pow(n) - BigInt::from(3u32).pow(n) - 1;
        report.check(value == closed, || {
            format!("auxiliary sum at (n={n}, l=2): {value} vs {closed}")
        });
    }

    for n in 2u32..=10 {
        for l in 1..n {
            let boundary = irreducible_component_count(EquationClass::new(0, n, n)?, l)?;
            report.check(boundary == BigInt::from(0), || {
                format!("boundary class (0, {n}) at l={l} counts {boundary}, expected 0")
            });
        }
    }

    for n in 0u32..=30 {
        for m in 0..=30 {
            let recurrence = stirling2(n, m);
            let explicit = stirling2_explicit(n, m);
            report.check(recurrence == explicit, || {
                format!("S({n}, {m}): recurrence {recurrence}, explicit {explicit}")
            });
        }
    }

    Ok(report.finish(format!(
        "{averages} averages, 18 closed forms, 20 auxiliary sums, 45 boundary classes, 961 Stirling pairs"
    )))
}

/// The average component count sits between a third of the labelled
/// partition count and the full labelled partition count, for every
/// `1 <= l < n <= max_n`, compared as exact rationals.
pub fn check_average_bounds(max_n: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("average-bounds");
    let mut checked = 0u64;
    for n in 2..=max_n {
        for l in 1..n {
            let (lower, upper) = average_component_bounds(n, l)?;
            let average = average_component_count(n, l)?;
            checked += 1;
            report.check(lower <= average && average <= upper, || {
                format!("average({n}, {l}) = {average} outside [{lower}, {upper}]")
            });
        }
    }
    Ok(report.finish(format!("{checked} regimes inside the bounds")))
}

/// The average component count approaches `l^n`: the exact ratio lands in
/// a narrow window around 1 for two large regimes.
pub fn check_asymptotic_ratios() -> Result<CheckReport> {
    let mut report = CheckReport::new("asymptotic-ratio");
    let window = |lo: (i32, i32), hi: (i32, i32)| {
        (
            BigRational::new(BigInt::from(lo.0), BigInt::from(lo.1)),
            BigRational::new(BigInt::from(hi.0), BigInt::from(hi.1)),
        )
    };
    for (n, l, lo, hi) in [
        (20u32, 2u32, (99, 100), (101, 100)),
        (15, 3, (9, 10), (11, 10)),
    ] {
        let ratio = asymptotic_ratio(n, l)?;
        let (lo, hi) = window(lo, hi);
        report.check(lo <= ratio && ratio <= hi, || {
            format!("ratio({n}, {l}) = {ratio} outside [{lo}, {hi}]")
        });
    }
    Ok(report.finish("2 large regimes inside their windows".to_string()))
}

/// The partition walk yields exactly `l! * S(n, l)` partitions for every
/// `1 <= l <= n <= max_n`.
pub fn check_partition_enumeration_counts(max_n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("partition-enumeration");
    let mut checked = 0u64;
    for n in 1..=max_n {
        for l in 1..=n {
            let walked = enumerate_ordered_partitions(n, l)?.count();
            let expected = labelled_stirling(n as u32, l as u32);
            checked += 1;
            report.check(BigInt::from(walked) == expected, || {
                format!("({n}, {l}): walked {walked} partitions, expected {expected}")
            });
        }
    }
    Ok(report.finish(format!("{checked} shapes walked and counted")))
}

/// Every solution point of every equation in the sweep extends to a
/// component partition whose set contains the point.
pub fn check_point_extension_totality(max_n: usize, max_l: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("point-extension");
    let mut checked = 0u64;
    for (n, chain) in sweep_regimes(max_n, max_l) {
        for eq in enumerate_equations(n as u32)? {
            let solutions = solve(&eq, chain, n)?;
            for point in solutions.iter() {
                let sigma = extend_point_to_partition(&point, &eq)?;
                checked += 1;
                report.check(sigma.block_count() == chain.order() as usize, || {
                    format!(
                        "n={n} l={}: {eq} at {point}: wrong block count",
                        chain.order()
                    )
                });
                report.check(is_component_partition(&sigma, &eq)?, || {
                    format!(
                        "n={n} l={}: {eq} at {point}: extension not component-inducing",
                        chain.order()
                    )
                });
                report.check(sigma.solution_set()?.contains(&point)?, || {
                    format!(
                        "n={n} l={}: {eq} at {point}: extension loses the point",
                        chain.order()
                    )
                });
            }
        }
    }
    Ok(report.finish(format!("{checked} solution points extended")))
}

/// Everything the acceptance gate runs, in presentation order, at the
/// standard sweep sizes.
pub fn run_all_checks() -> Result<Vec<CheckReport>> {
    Ok(vec![
        check_reference_table()?,
        check_component_counts_match_formula(6, 3)?,
        check_components_cover_solutions(6, 3)?,
        check_component_overlap_structure(6, 3)?,
        check_oracle_agreement()?,
        check_counting_identities()?,
        check_average_bounds(12)?,
        check_asymptotic_ratios()?,
        check_partition_enumeration_counts(10)?,
        check_point_extension_totality(6, 3)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_flag_failures_with_messages() {
        let mut report = CheckReport::new("sample");
        assert!(report.passed);
        report.check(true, || unreachable!());
        for i in 0..12 {
            report.fail(format!("problem {i}"));
        }
        let report = report.finish("12 things checked".to_string());
        assert!(!report.passed);
        assert_eq!(report.failure_count, 12);
        assert_eq!(report.failures.len(), 8);
        assert!(report.line().starts_with("FAIL sample"));
        assert!(report.line().contains("problem 0"));
    }

    #[test]
    fn small_sweeps_pass() {
        let table = check_reference_table().unwrap();
        assert!(table.passed, "{}", table.line());
        let counts = check_component_counts_match_formula(4, 3).unwrap();
        assert!(counts.passed, "{}", counts.line());
        let coverage = check_components_cover_solutions(4, 3).unwrap();
        assert!(coverage.passed, "{}", coverage.line());
        let ratios = check_asymptotic_ratios().unwrap();
        assert!(ratios.passed, "{}", ratios.line());
    }
}
