//! Named identity checks and their shared report type.
//!
//! Every closed form in the crate is re-derivable from independent data
//! (the automaton dynamic programs, the recursion-produced polynomials,
//! exhaustive enumeration). Each check compares two such routes and
//! reports the first coefficient where they disagree. Failure is data,
//! not a panic, so a driver can aggregate results.

use serde::{Deserialize, Serialize};

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Order (in z or u) the identity was verified through.
    pub order: usize,
    pub passed: bool,
    /// First failing coefficient index, when one exists.
    pub first_failure: Option<usize>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(name: &str, order: usize, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.to_string(),
            order,
            passed: true,
            first_failure: None,
            detail: detail.into(),
        }
    }

    pub fn fail(
        name: &str,
        order: usize,
        first_failure: Option<usize>,
        detail: impl Into<String>,
    ) -> Self {
        CheckReport {
            name: name.to_string(),
            order,
            passed: false,
            first_failure,
            detail: detail.into(),
        }
    }

    /// Merge sub-results under one name, keeping the first failure.
    pub fn combine(name: &str, order: usize, parts: Vec<CheckReport>) -> Self {
        let failed: Vec<&CheckReport> = parts.iter().filter(|r| !r.passed).collect();
        if failed.is_empty() {
            let detail = parts
                .iter()
                .map(|r| r.detail.as_str())
                .collect::<Vec<_>>()
                .join("; ");
            CheckReport::pass(name, order, detail)
        } else {
            let first = failed[0];
            CheckReport::fail(
                name,
                order,
                first.first_failure,
                format!("{} of {} sub-checks failed: {}", failed.len(), parts.len(), first.detail),
            )
        }
    }
}

/// Names accepted by [`run_check`], in the order [`run_all`] runs them.
pub const CHECK_NAMES: &[&str] = &[
    "functional-equation",
    "substitution",
    "s-of-z-squared",
    "kernel",
    "three-term",
    "dk-closed",
    "truncation",
    "tail-formula",
    "ph-qh",
];

/// Run one named check at the given order; `None` for unknown names.
///
/// Auxiliary parameters (level ranges, height bounds, cutoffs) use the
/// same defaults the acceptance suite pins.
pub fn run_check(name: &str, order: usize) -> Option<CheckReport> {
    let order = order.max(4);
    match name {
        "functional-equation" => Some(crate::closed_form::functional_equation_check(order)),
        "substitution" => Some(crate::closed_form::substitution_identity_check(order)),
        "s-of-z-squared" => Some(crate::level::s_of_zsq_identity_check(order)),
        "kernel" => Some(crate::level::kernel_identity_check(order)),
        "three-term" => Some(crate::level::three_term_check(6, order)),
        "dk-closed" => Some(crate::level::dk_closed_check(12, order)),
        "truncation" => Some(crate::level::truncation_consistency_check(8, order)),
        "tail-formula" => Some(CheckReport::combine(
            "tail-formula",
            order,
            [0, 2, 5]
                .iter()
                .map(|&h| crate::height::tail_formula_check(h, order))
                .collect(),
        )),
        "ph-qh" => Some(CheckReport::combine(
            "ph-qh",
            order,
            [0, 1, 3]
                .iter()
                .map(|&h| crate::height::ph_qh_closed_check(h, order))
                .collect(),
        )),
        _ => None,
    }
}

/// Run every named check at the given order.
pub fn run_all(order: usize) -> Vec<CheckReport> {
    CHECK_NAMES
        .iter()
        .map(|name| run_check(name, order).expect("registered name"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_registered_checks_pass_at_order_24() {
        for report in run_all(24) {
            assert!(
                report.passed,
                "{} failed at {:?}: {}",
                report.name, report.first_failure, report.detail
            );
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(run_check("no-such-check", 8).is_none());
    }

    #[test]
    fn combine_keeps_first_failure() {
        let merged = CheckReport::combine(
            "demo",
            8,
            vec![
                CheckReport::pass("a", 8, "ok"),
                CheckReport::fail("b", 8, Some(3), "broken"),
                CheckReport::fail("c", 8, Some(1), "also broken"),
            ],
        );
        assert!(!merged.passed);
        assert_eq!(merged.first_failure, Some(3));
    }
}
