//! The acceptance gate: run every criterion of the full suite at seed 0 and
//! print one line per criterion. Run with `--nocapture` to see the lines on
//! success too.

use brauer_core::selftest::{run_selftest, FULL_IDS};

#[test]
fn all_acceptance_criteria_pass() {
    let reports = run_selftest(true, 0);
    assert_eq!(reports.len(), FULL_IDS.len());
    let mut failures = 0usize;
    for r in &reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>7} [{status}] {}: {} ({} ms)",
            r.id, r.name, r.details, r.millis
        );
        if !r.passed {
            failures += 1;
        }
    }
    let total: u128 = reports.iter().map(|r| r.millis).sum();
    println!(
        "{} criteria, {failures} failures, {total} ms total",
        reports.len()
    );
    assert_eq!(failures, 0, "acceptance criteria failed");
    assert!(
        total <= 60_000,
        "full suite exceeded its 60 s budget: {total} ms"
    );
}
