//! Runs the built-in self-check suite and prints each check.

use erasure_exponents::cli::cmd_validate;

fn main() {
    let report = cmd_validate(0.0);
    for c in &report.checks {
        println!(
            "{} {}: defect {:.2e}, tolerance {:.0e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.defect,
            c.tolerance
        );
    }
    println!("{}/{} checks passed", report.passed, report.checks.len());
}
