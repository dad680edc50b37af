use anyhow::{Context, Result};
use cwsoc::model::MIN_CLOSED_FORM_ORDER;
use cwsoc::verification::{run_suite, SuiteOptions};

use super::create_dir;
use crate::args::VerifyArgs;
use crate::config::parse_n_list;
use crate::usage;

pub const REPORT_FILE: &str = "report.json";

pub fn options(args: &VerifyArgs) -> Result<SuiteOptions> {
    let mut opts = SuiteOptions::default();
    if let Some(raw) = &args.n_list {
        opts.n_list = parse_n_list(raw)?;
        if let Some(&n) = opts.n_list.iter().find(|&&n| n < MIN_CLOSED_FORM_ORDER) {
            return Err(usage(format!("n-list entries must be at least {MIN_CLOSED_FORM_ORDER}, got {n}")));
        }
    }
    for item in &args.tol {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("--tol expects key=value, got '{item}'")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("--tol {key}: cannot parse '{value}'")))?;
        opts.tolerances.set(key.trim(), value).map_err(usage)?;
    }
    Ok(opts)
}

/// Exit 0 iff every check passes.
pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let opts = options(args)?;
    let reports = run_suite(args.suite, &opts);
    create_dir(&args.out)?;
    let path = args.out.join(REPORT_FILE);
    std::fs::write(&path, serde_json::to_string_pretty(&reports)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    let passed = reports.iter().filter(|r| r.pass).count();
    for r in &reports {
        println!(
            "{} {} value={:e} expected={:e} tol={:e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.value,
            r.expected,
            r.tolerance
        );
    }
    println!("{passed}/{} checks passed; report in {}", reports.len(), path.display());
    Ok(if passed == reports.len() { crate::EXIT_OK } else { crate::EXIT_FAILURE })
}
