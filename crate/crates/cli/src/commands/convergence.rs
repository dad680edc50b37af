use std::path::{Path, PathBuf};

use anyhow::Result;
use cwsoc::stats::mean_sd;
use cwsoc::verification::ks_statistic;
use cwsoc::{ChainState, ModelParams, QuarticLaw, SamplerConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::simulate::{resolve_out, resolve_sampler};
use super::{create_dir, csv_with_header};
use crate::args::ConvergenceArgs;
use crate::config::{parse_n_list, ConfigFile};
use crate::manifest::RunManifest;
use crate::usage;

pub const CONVERGENCE_FILE: &str = "convergence.csv";
pub const CONVERGENCE_HEADER: [&str; 5] = ["n", "ks", "mean_t_scaled", "sd_t_scaled", "samples"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSettings {
    pub n_list: Vec<usize>,
    pub sigma: f64,
    /// Recorded samples per n.
    pub samples: u64,
    pub sampler: SamplerConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub ks: f64,
    pub mean_t_scaled: f64,
    pub sd_t_scaled: f64,
    pub samples: u64,
}

pub fn resolve(args: &ConvergenceArgs) -> Result<(ConvergenceSettings, PathBuf)> {
    let cfg = ConfigFile::load(args.sampler.config.as_deref())?;
    let (sigma, sampler) = resolve_sampler(&args.sampler, &cfg, 2_000, 10)?;
    let raw = args
        .n_list
        .clone()
        .or_else(|| cfg.raw("n_list").map(str::to_string))
        .unwrap_or_else(|| "32,64,128,256".into());
    let n_list = parse_n_list(&raw)?;
    for &n in &n_list {
        ModelParams::new(n, sigma).map_err(usage)?;
    }
    let samples = cfg.pick(args.samples, "samples", 20_000)?;
    if samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let settings = ConvergenceSettings {
        n_list,
        sigma,
        samples,
        sampler,
    };
    Ok((settings, resolve_out(&args.out, &cfg)?))
}

pub fn cmd_convergence(args: &ConvergenceArgs) -> Result<i32> {
    let (settings, out) = resolve(args)?;
    let rows = run_convergence(&settings, &out)?;
    println!("{}", CONVERGENCE_HEADER.join("\t"));
    for r in rows {
        println!("{}\t{:.5}\t{:.5}\t{:.5}\t{}", r.n, r.ks, r.mean_t_scaled, r.sd_t_scaled, r.samples);
    }
    Ok(crate::EXIT_OK)
}

/// One chain of `samples` recorded sweeps at order n (stream 0 of the seed).
pub fn convergence_row(n: usize, settings: &ConvergenceSettings) -> Result<ConvergenceRow> {
    let params = ModelParams::new(n, settings.sigma)?;
    let mut chain = ChainState::new(params, settings.sampler)?;
    let records = chain.run(ChainState::sweeps_for_samples(&settings.sampler, settings.samples));
    let mut s: Vec<f64> = records.iter().map(|r| r.s_scaled).collect();
    s.sort_by(f64::total_cmp);
    let law = QuarticLaw::new(settings.sigma)?;
    let ks = ks_statistic(&s, |x| law.cdf(x))?;
    let t: Vec<f64> = records.iter().map(|r| r.t_scaled).collect();
    let (mean, sd) = mean_sd(&t);
    Ok(ConvergenceRow {
        n,
        ks,
        mean_t_scaled: mean,
        sd_t_scaled: sd,
        samples: records.len() as u64,
    })
}

pub fn run_convergence(settings: &ConvergenceSettings, out: &Path) -> Result<Vec<ConvergenceRow>> {
    create_dir(out)?;
    let rows: Vec<ConvergenceRow> = settings
        .n_list
        .par_iter()
        .map(|&n| convergence_row(n, settings))
        .collect::<Result<_>>()?;
    let path = out.join(CONVERGENCE_FILE);
    let mut w = csv_with_header(&path, &CONVERGENCE_HEADER)?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let params = ModelParams::new(settings.n_list[0], settings.sigma)?;
    let outputs = vec![path.display().to_string(), out.join(crate::manifest::MANIFEST_FILE).display().to_string()];
    RunManifest::new("convergence", params, settings.sampler, settings, outputs)?.write(out)?;
    Ok(rows)
}
