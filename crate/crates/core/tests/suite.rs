use std::time::Instant;

use cwsoc::verification::suite::{run_suite, Suite, SuiteOptions};

#[test]
fn full_suite_passes_on_defaults() {
    let start = Instant::now();
    let reports = run_suite(Suite::All, &SuiteOptions::default());
    let failed: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    assert!(reports.windows(2).all(|w| w[0].name <= w[1].name));
    for prefix in ["complex.", "density.", "laplace."] {
        assert!(reports.iter().any(|r| r.name.starts_with(prefix)));
    }
    assert_eq!(reports.iter().filter(|r| r.name.starts_with("density.log_z_bound")).count(), 26);
    assert_eq!(reports.iter().filter(|r| r.name.starts_with("density.inversion.n=")).count(), 36);
    eprintln!("suite all: {} checks in {:.2?}", reports.len(), start.elapsed());
}

#[test]
fn suite_filter_and_n_list() {
    let opts = SuiteOptions {
        n_list: vec![7, 12],
        ..SuiteOptions::default()
    };
    let laplace = run_suite(Suite::Laplace, &opts);
    assert!(laplace.iter().all(|r| r.name.starts_with("laplace.")));
    let density = run_suite(Suite::Density, &opts);
    let bounds: Vec<_> = density
        .iter()
        .filter(|r| r.name.starts_with("density.log_z_bound"))
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(bounds, ["density.log_z_bound.n=12", "density.log_z_bound.n=7"]);
}

#[test]
fn a_tightened_tolerance_fails_visibly() {
    let mut opts = SuiteOptions::default();
    opts.tolerances.set("ratio_100", 0.01).unwrap();
    let reports = run_suite(Suite::Laplace, &opts);
    let r = reports.iter().find(|r| r.name == "laplace.ratio.n=100").unwrap();
    assert!(!r.pass);
    assert_eq!(r.tolerance, 0.01);
}
