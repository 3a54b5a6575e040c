//! Acceptance matrix. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time budget.

use std::process::ExitCode;

use bmw_workbench::verify::{run_suite, SuiteConfig};

fn main() -> ExitCode {
    let results = run_suite(&SuiteConfig::default());
    let mut failures = 0;
    for r in &results {
        let pass = r.passed && r.within_budget();
        failures += usize::from(!pass);
        println!(
            "criterion {} {} {} ({:.2}s, budget {}s): {}",
            r.id,
            if pass { "PASS" } else { "FAIL" },
            r.title,
            r.elapsed.as_secs_f64(),
            r.budget.as_secs(),
            r.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failures,
        results.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
