use std::time::Instant;

use p3bundles_core::verify::{run_all, Formula, Formulas, Grids, Suite};

#[test]
fn default_grids_pass() {
    let start = Instant::now();
    let report = run_all(&Grids::default(), &Formulas::exact());
    let shown = &report.failures[..report.failures.len().min(10)];
    assert!(report.ok(), "{} failures, first: {shown:#?}", report.checks_failed);
    assert_eq!(report.checks_failed as usize, report.failures.len());
    assert_eq!(report.suites_run.len(), Suite::ALL.len());
    assert!(report.checks_passed > 100_000, "only {} checks", report.checks_passed);
    eprintln!("{} checks in {:?}", report.checks_passed, start.elapsed());
}

#[test]
fn every_shifted_formula_is_caught() {
    let grids = Grids { k_max: 8, coord: 10, ab: 12, bounds_k_max: 8, bounds_ab: 12 };
    for formula in Formula::ALL {
        for delta in [1, -1] {
            let report = run_all(&grids, &Formulas::shifted(formula, delta));
            assert!(report.checks_failed > 0, "{formula:?} shifted by {delta} went unnoticed");
            assert_eq!(report.checks_failed as usize, report.failures.len());
        }
    }
}
