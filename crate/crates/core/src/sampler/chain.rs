use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{stream_rng, SamplerConfig};
use crate::error::{Error, Result};
use crate::model::{sum_stats, Configuration, ModelParams, SumStats};

/// Cached statistics are recomputed from the spins this often.
pub const RESYNC_SWEEPS: u64 = 10_000;

/// One recorded sample: cumulative sweep index, (S_n, T_n), and the
/// rescaled pair (S_n / n^{3/4}, T_n / n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub sweep: u64,
    pub s: f64,
    pub t: f64,
    pub s_scaled: f64,
    pub t_scaled: f64,
}

/// A single-site Metropolis chain targeting the tilted measure.
#[derive(Debug, Clone)]
pub struct ChainState {
    config: Configuration,
    stats: SumStats,
    params: ModelParams,
    sampler: SamplerConfig,
    chain_id: u64,
    rng: ChaCha8Rng,
    accepted: u64,
    proposed: u64,
    sweeps_done: u64,
}

impl ChainState {
    /// Chain 0 of `sampler.seed`.
    pub fn new(params: ModelParams, sampler: SamplerConfig) -> Result<Self> {
        Self::with_stream(params, sampler, 0)
    }

    /// Starts from n iid N(0, σ²) spins drawn from the chain's own stream.
    pub fn with_stream(params: ModelParams, sampler: SamplerConfig, chain_id: u64) -> Result<Self> {
        ModelParams::new(params.n, params.sigma)?;
        sampler.validate()?;
        let mut rng = stream_rng(sampler.seed, chain_id);
        let config = loop {
            let x: Vec<f64> = (0..params.n)
                .map(|_| params.sigma * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let config = Configuration::new(x)?;
            if !config.is_all_zero() {
                break config;
            }
        };
        let stats = sum_stats(&config);
        Ok(Self {
            config,
            stats,
            params,
            sampler,
            chain_id,
            rng,
            accepted: 0,
            proposed: 0,
            sweeps_done: 0,
        })
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn stats(&self) -> SumStats {
        self.stats
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn sampler(&self) -> &SamplerConfig {
        &self.sampler
    }

    pub fn chain_id(&self) -> u64 {
        self.chain_id
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn proposed(&self) -> u64 {
        self.proposed
    }

    pub fn sweeps_done(&self) -> u64 {
        self.sweeps_done
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    /// Largest relative gap between the cached and recomputed (S_n, T_n).
    pub fn drift(&self) -> f64 {
        let exact = sum_stats(&self.config);
        let ds = (self.stats.s - exact.s).abs() / (1.0 + exact.s.abs());
        let dt = (self.stats.t - exact.t).abs() / (1.0 + exact.t.abs());
        ds.max(dt)
    }

    pub fn resync(&mut self) {
        self.stats = sum_stats(&self.config);
    }

    /// Log acceptance ratio for moving `site` to `candidate`, or `None` when
    /// the move would make t non-positive.
    pub fn delta_log_target(&self, site: usize, candidate: f64) -> Option<f64> {
        let old = self.config[site];
        let SumStats { s, t } = self.stats;
        let s_new = s - old + candidate;
        let t_new = t - old * old + candidate * candidate;
        if !(t_new > 0.0) {
            return None;
        }
        let tilt_old = s * s / (2.0 * t);
        let tilt_new = s_new * s_new / (2.0 * t_new);
        Some(tilt_new - tilt_old - (t_new - t) / (2.0 * self.params.variance()))
    }

    /// Metropolis decision for a given proposal and uniform draw `u` in [0, 1).
    pub fn propose(&mut self, site: usize, candidate: f64, u: f64) -> bool {
        self.proposed += 1;
        let Some(delta) = self.delta_log_target(site, candidate) else {
            return false;
        };
        if u < delta.exp() {
            let old = self.config[site];
            self.stats.s = self.stats.s - old + candidate;
            self.stats.t = self.stats.t - old * old + candidate * candidate;
            self.config.set(site, candidate);
            self.accepted += 1;
            true
        } else {
            false
        }
    }

    /// One single-site update. Always consumes exactly three draws (site,
    /// normal increment, uniform) so streams stay aligned across σ.
    pub fn step(&mut self) -> bool {
        let site = self.rng.random_range(0..self.params.n);
        let z: f64 = self.rng.sample(StandardNormal);
        let u: f64 = self.rng.random();
        let candidate = self.config[site] + self.sampler.proposal_scale * self.params.sigma * z;
        self.propose(site, candidate, u)
    }

    /// n single-site updates.
    pub fn sweep(&mut self) {
        for _ in 0..self.params.n {
            self.step();
        }
        self.sweeps_done += 1;
        if self.sweeps_done.is_multiple_of(RESYNC_SWEEPS) {
            self.resync();
        }
    }

    fn record(&self) -> SampleRecord {
        let n = self.params.n_f64();
        SampleRecord {
            sweep: self.sweeps_done,
            s: self.stats.s,
            t: self.stats.t,
            s_scaled: self.stats.s / n.powf(0.75),
            t_scaled: self.stats.t / n,
        }
    }

    fn is_recorded(&self) -> bool {
        let burn_in = self.sampler.burn_in_sweeps;
        self.sweeps_done > burn_in && (self.sweeps_done - burn_in).is_multiple_of(self.sampler.thin_sweeps)
    }

    /// Runs `sweeps` sweeps, handing each retained record to `sink`.
    ///
    /// Sweep indices are cumulative over the chain's lifetime; a record is
    /// kept when the index exceeds the burn-in and the post-burn-in offset is
    /// a multiple of the thinning interval.
    pub fn run_each<F: FnMut(SampleRecord)>(&mut self, sweeps: u64, mut sink: F) {
        for _ in 0..sweeps {
            self.sweep();
            if self.is_recorded() {
                sink(self.record());
            }
        }
    }

    pub fn run(&mut self, sweeps: u64) -> Vec<SampleRecord> {
        let mut out = Vec::new();
        self.run_each(sweeps, |r| out.push(r));
        out
    }

    /// Total sweeps needed so that a fresh chain yields `samples` records.
    pub fn sweeps_for_samples(sampler: &SamplerConfig, samples: u64) -> u64 {
        sampler.burn_in_sweeps + samples * sampler.thin_sweeps
    }
}

/// Builds a chain from explicit spins; used to pin down single proposals.
impl TryFrom<(Configuration, ModelParams, SamplerConfig)> for ChainState {
    type Error = Error;

    fn try_from(
        (config, params, sampler): (Configuration, ModelParams, SamplerConfig),
    ) -> Result<Self> {
        if config.len() != params.n {
            return Err(Error::InvalidParameter(format!(
                "configuration has {} spins, model has n = {}",
                config.len(),
                params.n
            )));
        }
        if config.is_all_zero() {
            return Err(Error::Domain("chain cannot start at the all-zero configuration".into()));
        }
        let mut chain = Self::new(params, sampler)?;
        chain.stats = sum_stats(&config);
        chain.config = config;
        Ok(chain)
    }
}
