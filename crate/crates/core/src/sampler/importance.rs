//! Self-normalized importance sampling of the tilted law of (S_n, T_n).
//!
//! Under the tilted measure the law of (S_n, T_n) is the n-fold convolution
//! of the law of (Z, Z²), Z ~ N(0, σ²), reweighted by e^{s²/(2t)} / Z_n.
//! Draws from the convolution are exact and cheap, so expectations under the
//! tilted measure follow from weighted averages.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{log_tilt_weight, CompensatedSum, ModelParams, SumStats};

/// Below this effective sample size an estimate is flagged unreliable.
pub const MIN_RELIABLE_ESS: f64 = 50.0;

pub const MIN_DRAWS: usize = 100;

/// (ΣZ_i, ΣZ_i²) for n iid N(0, σ²) draws.
pub fn sample_nu_star<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> SumStats {
    let mut s = CompensatedSum::new();
    let mut t = CompensatedSum::new();
    for _ in 0..params.n {
        let z = params.sigma * rng.sample::<f64, _>(StandardNormal);
        s.add(z);
        t.add(z * z);
    }
    SumStats::new(s.value(), t.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimateStatus {
    Reliable,
    /// Effective sample size below [`MIN_RELIABLE_ESS`].
    Unreliable,
}

impl EstimateStatus {
    pub fn from_ess(ess: f64) -> Self {
        if ess >= MIN_RELIABLE_ESS {
            Self::Reliable
        } else {
            Self::Unreliable
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImportanceEstimate {
    pub estimate: f64,
    /// Delta-method standard error of the ratio estimator.
    pub std_error: f64,
    /// (Σw)² / Σw².
    pub ess: f64,
    pub draws: usize,
    pub status: EstimateStatus,
}

/// Σ w_i f(x_i) / Σ w_i with w = e^{s²/(2t)} over `draws` exact draws.
pub fn importance_estimate<F, R>(
    f: F,
    params: &ModelParams,
    draws: usize,
    rng: &mut R,
) -> Result<ImportanceEstimate>
where
    F: Fn(SumStats) -> f64,
    R: Rng + ?Sized,
{
    if draws < MIN_DRAWS {
        return Err(Error::InvalidParameter(format!(
            "importance sampling needs at least {MIN_DRAWS} draws, got {draws}"
        )));
    }
    let mut log_w = Vec::with_capacity(draws);
    let mut values = Vec::with_capacity(draws);
    for _ in 0..draws {
        let stats = sample_nu_star(params, rng);
        // t = 0 has probability zero under a continuous base measure.
        log_w.push(log_tilt_weight(stats)?);
        values.push(f(stats));
    }
    let shift = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = log_w.iter().map(|lw| (lw - shift).exp()).collect();

    let mut sum_w = CompensatedSum::new();
    let mut sum_wf = CompensatedSum::new();
    let mut sum_w2 = CompensatedSum::new();
    for (&wi, &fi) in w.iter().zip(&values) {
        sum_w.add(wi);
        sum_wf.add(wi * fi);
        sum_w2.add(wi * wi);
    }
    let total = sum_w.value();
    let estimate = sum_wf.value() / total;

    let mut resid = CompensatedSum::new();
    for (&wi, &fi) in w.iter().zip(&values) {
        let d = wi * (fi - estimate);
        resid.add(d * d);
    }
    let std_error = resid.value().sqrt() / total;
    let ess = total * total / sum_w2.value();
    Ok(ImportanceEstimate {
        estimate,
        std_error,
        ess,
        draws,
        status: EstimateStatus::from_ess(ess),
    })
}
