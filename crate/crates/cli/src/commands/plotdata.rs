use std::path::Path;

use anyhow::{bail, Context, Result};
use cwsoc::QuarticLaw;
use serde::Serialize;

use super::{create_dir, csv_with_header};
use crate::args::PlotdataArgs;
use crate::manifest::{RunManifest, MANIFEST_FILE};
use crate::usage;

pub const HISTOGRAM_FILE: &str = "histogram.csv";
pub const HISTOGRAM_HEADER: [&str; 4] = ["bin_left", "bin_right", "density_empirical", "density_limit"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub bin_left: f64,
    pub bin_right: f64,
    pub density_empirical: f64,
    pub density_limit: Option<f64>,
}

/// Equal-width bins over [min, max] (max falls in the last bin), normalized
/// so that Σ density × width = 1.
pub fn histogram(values: &[f64], bins: usize, law: Option<&QuarticLaw>) -> Result<Vec<Bin>> {
    if bins == 0 {
        return Err(usage("--bins must be at least 1"));
    }
    if values.is_empty() {
        bail!("no samples to bin");
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        bail!("samples span no range (all equal to {lo})");
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in values {
        let k = (((x - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let total = values.len() as f64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let left = lo + k as f64 * width;
            let right = if k + 1 == bins { hi } else { lo + (k + 1) as f64 * width };
            Bin {
                bin_left: left,
                bin_right: right,
                density_empirical: c as f64 / (total * (right - left)),
                density_limit: law.map(|l| l.density(0.5 * (left + right))),
            }
        })
        .collect())
}

pub fn read_column(path: &Path, column: &str) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let idx = r
        .headers()?
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| usage(format!("column '{column}' not found in {}", path.display())))?;
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let field = &rec[idx];
        out.push(field.parse().with_context(|| format!("bad value '{field}' in column {column}"))?);
    }
    Ok(out)
}

pub fn cmd_plotdata(args: &PlotdataArgs) -> Result<i32> {
    let dir = args.input.parent().unwrap_or(Path::new("."));
    let sigma = match args.sigma {
        Some(s) => s,
        None => match RunManifest::read(&dir.join(MANIFEST_FILE)) {
            Ok(m) => m.params.sigma,
            Err(_) => 1.0,
        },
    };
    let law = QuarticLaw::new(sigma).map_err(usage)?;
    if args.bins == 0 {
        return Err(usage("--bins must be at least 1"));
    }
    let values = read_column(&args.input, &args.column)?;
    let bins = histogram(&values, args.bins, args.overlay_limit.then_some(&law))?;
    let out = args.out.as_deref().unwrap_or(dir);
    create_dir(out)?;
    let path = out.join(HISTOGRAM_FILE);
    let mut w = csv_with_header(&path, &HISTOGRAM_HEADER)?;
    for b in &bins {
        w.serialize(b)?;
    }
    w.flush()?;
    println!("wrote {}", path.display());
    Ok(crate::EXIT_OK)
}
