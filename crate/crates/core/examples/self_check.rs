//! The invariant suite, first on the pristine closed forms and then with a
//! small offset injected into every closed-form reference.

use keyregion::selfcheck::run_checks;

fn main() -> keyregion::Result<()> {
    for perturb in [0.0, 1e-3] {
        let report = run_checks(perturb)?;
        println!("offset {perturb}: all passed = {}", report.passed());
        for c in &report.results {
            println!("  {} {} ({:.2e} vs {:.0e})", if c.passed { "ok  " } else { "FAIL" }, c.name, c.observed, c.tolerance);
        }
    }
    Ok(())
}
