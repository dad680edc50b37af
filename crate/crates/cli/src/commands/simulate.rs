use std::path::{Path, PathBuf};

use anyhow::Result;
use cwsoc::sampler::DEFAULT_PROPOSAL_SCALE;
use cwsoc::{ChainState, ModelParams, SamplerConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{create_dir, csv_with_header};
use crate::args::{SamplerArgs, SimulateArgs};
use crate::config::ConfigFile;
use crate::manifest::RunManifest;
use crate::usage;

pub const SAMPLES_FILE: &str = "samples.csv";
pub const SAMPLES_HEADER: [&str; 6] = ["chain", "sweep", "s", "t", "s_scaled", "t_scaled"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateSettings {
    pub params: ModelParams,
    pub sampler: SamplerConfig,
    /// Sweeps per chain, burn-in included.
    pub sweeps: u64,
    pub chains: u64,
}

#[derive(Serialize)]
struct Row {
    chain: u64,
    sweep: u64,
    s: f64,
    t: f64,
    s_scaled: f64,
    t_scaled: f64,
}

/// Resolves σ and the sampler from flags, the config file, CWSOC_SEED and
/// defaults, in that order.
pub fn resolve_sampler(
    args: &SamplerArgs,
    cfg: &ConfigFile,
    default_burn_in: u64,
    default_thin: u64,
) -> Result<(f64, SamplerConfig)> {
    let sigma = cfg.pick(args.sigma, "sigma", 1.0)?;
    let sampler = SamplerConfig::new(
        cfg.pick(args.proposal_scale, "proposal_scale", DEFAULT_PROPOSAL_SCALE)?,
        cfg.pick(args.burn_in, "burn_in", default_burn_in)?,
        cfg.pick(args.thin, "thin", default_thin)?,
        cfg.seed(args.seed)?,
    )
    .map_err(usage)?;
    Ok((sigma, sampler))
}

pub fn resolve_out(flag: &Option<PathBuf>, cfg: &ConfigFile) -> Result<PathBuf> {
    flag.clone()
        .or_else(|| cfg.raw("out").map(PathBuf::from))
        .ok_or_else(|| usage("--out DIR is required"))
}

pub fn resolve(args: &SimulateArgs) -> Result<(SimulateSettings, PathBuf)> {
    let cfg = ConfigFile::load(args.sampler.config.as_deref())?;
    let (sigma, sampler) = resolve_sampler(&args.sampler, &cfg, 1_000, 1)?;
    let params = ModelParams::new(cfg.pick(args.n, "n", 256)?, sigma).map_err(usage)?;
    let chains = cfg.pick(args.chains, "chains", 1)?;
    if chains == 0 {
        return Err(usage("--chains must be at least 1"));
    }
    let settings = SimulateSettings {
        params,
        sampler,
        sweeps: cfg.pick(args.sweeps, "sweeps", 10_000)?,
        chains,
    };
    Ok((settings, resolve_out(&args.out, &cfg)?))
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let (settings, out) = resolve(args)?;
    let paths = run_simulate(&settings, &out)?;
    for p in paths {
        println!("wrote {p}");
    }
    Ok(crate::EXIT_OK)
}

/// Runs the chains in parallel (chain c uses stream c) and writes the records
/// in chain order, then the manifest.
pub fn run_simulate(settings: &SimulateSettings, out: &Path) -> Result<Vec<String>> {
    create_dir(out)?;
    let runs: Vec<_> = (0..settings.chains)
        .into_par_iter()
        .map(|id| {
            let mut chain = ChainState::with_stream(settings.params, settings.sampler, id)?;
            Ok::<_, cwsoc::Error>((chain.run(settings.sweeps), chain.acceptance_rate()))
        })
        .collect::<Result<_, _>>()?;

    let path = out.join(SAMPLES_FILE);
    let mut w = csv_with_header(&path, &SAMPLES_HEADER)?;
    for (chain, (records, rate)) in runs.iter().enumerate() {
        eprintln!("chain {chain}: {} records, acceptance rate {rate:.3}", records.len());
        for r in records {
            w.serialize(Row {
                chain: chain as u64,
                sweep: r.sweep,
                s: r.s,
                t: r.t,
                s_scaled: r.s_scaled,
                t_scaled: r.t_scaled,
            })?;
        }
    }
    w.flush()?;

    let outputs = vec![path.display().to_string(), out.join(crate::manifest::MANIFEST_FILE).display().to_string()];
    RunManifest::new("simulate", settings.params, settings.sampler, settings, outputs.clone())?.write(out)?;
    Ok(outputs)
}
