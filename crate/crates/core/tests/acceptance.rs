//! Acceptance criteria 1–9, one line per criterion.

use qvp_core::checks::{run_criterion, CheckReport};

fn run(id: u8) -> CheckReport {
    let r = run_criterion(id).expect("criterion exists");
    println!("{r}");
    r
}

#[test]
fn acceptance() {
    let reports: Vec<CheckReport> = (1..=9).map(run).collect();
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
