use ca184::verify::{run_suite, Suite};

#[test]
fn exact_suite_passes() {
    let report = run_suite(Suite::Exact, 7);
    for r in &report.results {
        println!(
            "{:<28} {} {:>7.2}s  {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
    }
    assert!(report.passed());
}

#[test]
#[ignore = "minutes of Monte Carlo; run with --ignored"]
fn stochastic_suite_passes() {
    let report = run_suite(Suite::Stochastic, 7);
    for r in &report.results {
        println!(
            "{:<28} {} {:>7.2}s  {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
    }
    assert!(report.passed());
}
