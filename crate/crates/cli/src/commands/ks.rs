use std::io::Read;

use anyhow::{bail, Context, Result};
use cwsoc::verification::ks_statistic_unsorted;
use cwsoc::QuarticLaw;

use crate::args::KsArgs;
use crate::format::sig17;
use crate::usage;

pub fn read_numbers(text: &str) -> Result<Vec<f64>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<f64>().with_context(|| format!("not a number: '{tok}'")))
        .collect()
}

/// Exit 0 iff the statistic is at most the critical value.
pub fn cmd_ks(args: &KsArgs) -> Result<i32> {
    let law = QuarticLaw::new(args.sigma).map_err(usage)?;
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
    };
    let values = read_numbers(&text)?;
    if values.is_empty() {
        bail!("no samples to test");
    }
    let d = ks_statistic_unsorted(&values, |x| law.cdf(x))?;
    let critical = args.critical.unwrap_or(1.36 / (values.len() as f64).sqrt());
    let pass = d <= critical;
    println!("statistic {}", sig17(d));
    println!("samples {}", values.len());
    println!("critical {}", sig17(critical));
    println!("result {}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { crate::EXIT_OK } else { crate::EXIT_FAILURE })
}
