//! Runs every acceptance criterion and prints one line per criterion.
//!
//! `cargo test -p quasivar --test acceptance -- --nocapture` shows the
//! individual checks as well.

use quasivar::suite::{run_criterion, CRITERIA, SEED};
use quasivar::Limits;

#[test]
fn acceptance_criteria() {
    let limits = Limits::default();
    let mut failed = Vec::new();
    for &(id, _, _) in CRITERIA.iter() {
        let r = run_criterion(id, &limits, SEED);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] criterion {:>2}: {} ({} ms, budget {} s)",
            r.id,
            r.title,
            r.elapsed_ms,
            r.budget_ms / 1000
        );
        for line in &r.checks {
            println!("           {line}");
        }
        if !r.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
