//! One pass/fail line per acceptance criterion; the test fails if any
//! criterion fails. Lines go straight to the stdout handle so they show up
//! without `--nocapture`.

use std::io::Write;
use std::time::Instant;

use shufflerep_core::selftest::{run_criterion, CRITERIA};

#[test]
fn acceptance_grid() {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let result = run_criterion(id);
        let mut out = std::io::stdout().lock();
        writeln!(out, "{result} ({:.1}s)", start.elapsed().as_secs_f64()).unwrap();
        out.flush().unwrap();
        if !result.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
