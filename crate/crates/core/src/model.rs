//! Model parameters, sufficient statistics and the exact log-densities of
//! (S_n, T_n).
//!
//! Every density here is unnormalized and returned as a logarithm. The
//! normalisation constants grow like n^{n/2} and are only ever handled in
//! log-space by [`crate::verification::normalization`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest n for which (S_n, T_n) has a closed-form density.
pub const MIN_CLOSED_FORM_ORDER: usize = 5;

/// Number of spins and standard deviation of the Gaussian base measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub sigma: f64,
}

impl ModelParams {
    pub fn new(n: usize, sigma: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { n, sigma })
    }

    /// Unit-variance model with `n` spins.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, 1.0)
    }

    pub fn variance(&self) -> f64 {
        self.sigma * self.sigma
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub(crate) fn require_closed_form(&self) -> Result<()> {
        require_closed_form(self.n)
    }
}

pub(crate) fn require_closed_form(n: usize) -> Result<()> {
    if n < MIN_CLOSED_FORM_ORDER {
        Err(Error::UnsupportedOrder(n))
    } else {
        Ok(())
    }
}

/// Running Neumaier (compensated) sum, accumulated left to right.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// One point (x_1, ..., x_n) of the state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    x: Vec<f64>,
}

impl Configuration {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Domain("configuration must be nonempty".into()));
        }
        Ok(Self { x })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.x
    }

    pub(crate) fn set(&mut self, site: usize, value: f64) {
        self.x[site] = value;
    }

    pub fn is_all_zero(&self) -> bool {
        self.x.iter().all(|&v| v == 0.0)
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = f64;

    fn index(&self, site: usize) -> &f64 {
        &self.x[site]
    }
}

/// The sufficient statistics (S_n, T_n) = (Σx_i, Σx_i²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumStats {
    pub s: f64,
    pub t: f64,
}

impl SumStats {
    pub fn new(s: f64, t: f64) -> Self {
        Self { s, t }
    }

    /// (s / n^alpha, t / n^beta).
    pub fn rescaled(&self, n: usize, exps: ScalingExponents) -> (f64, f64) {
        let n = n as f64;
        (self.s / n.powf(exps.alpha), self.t / n.powf(exps.beta))
    }
}

/// Exponents (alpha, beta) of the rescaling (S_n / n^alpha, T_n / n^beta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingExponents {
    pub alpha: f64,
    pub beta: f64,
}

impl ScalingExponents {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let valid = |e: f64| e > 0.0 && e <= 1.0;
        if !(valid(alpha) && valid(beta)) {
            return Err(Error::InvalidParameter(format!(
                "scaling exponents must lie in (0, 1], got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }
}

impl Default for ScalingExponents {
    /// The critical scaling (3/4, 1).
    fn default() -> Self {
        Self {
            alpha: 0.75,
            beta: 1.0,
        }
    }
}

/// Argument (x, y) of ψ and φ; the functions live on D+ = {y > x >= 0}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledPoint {
    pub x: f64,
    pub y: f64,
}

impl RescaledPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn in_domain(&self) -> bool {
        self.x >= 0.0 && self.y > self.x && self.y.is_finite()
    }

    fn check(&self) -> Result<()> {
        if self.in_domain() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "({}, {}) is not in D+ = {{y > x >= 0}}",
                self.x, self.y
            )))
        }
    }
}

/// (S_n, T_n) of a configuration, both by compensated left-to-right summation.
pub fn sum_stats(config: &Configuration) -> SumStats {
    let mut s = CompensatedSum::new();
    let mut t = CompensatedSum::new();
    for &v in config.as_slice() {
        s.add(v);
        t.add(v * v);
    }
    SumStats::new(s.value(), t.value())
}

/// (Σx_i)² / (2 Σx_i²), the exponent of the self-interaction.
pub fn interaction_energy(config: &Configuration) -> Result<f64> {
    if config.is_all_zero() {
        return Err(Error::Domain(
            "interaction energy is undefined for the all-zero configuration".into(),
        ));
    }
    let energy = log_tilt_weight(sum_stats(config))?;
    // Cauchy-Schwarz caps the exact value at n/2; rounding may not.
    Ok(energy.min(0.5 * config.len() as f64))
}

/// s² / (2t), the log of the tilt applied to the untilted law of (S_n, T_n).
pub fn log_tilt_weight(stats: SumStats) -> Result<f64> {
    if !(stats.t > 0.0) {
        return Err(Error::Domain(format!(
            "tilt weight needs t > 0, got t = {}",
            stats.t
        )));
    }
    Ok(stats.s * stats.s / (2.0 * stats.t))
}

/// True iff t > 0 and s² < n t.
pub fn in_support(stats: SumStats, n: usize) -> bool {
    stats.t > 0.0 && stats.s * stats.s < n as f64 * stats.t
}

/// Log of the unnormalized density of (S_n, T_n) under the tilted measure:
/// s²/(2t) - t/(2σ²) + ((n-3)/2) ln(t - s²/n), on s² < n t.
pub fn log_joint_density_unnormalized(stats: SumStats, params: &ModelParams) -> Result<f64> {
    params.require_closed_form()?;
    if !in_support(stats, params.n) {
        return Err(Error::Support {
            x: stats.s,
            y: stats.t,
        });
    }
    let n = params.n_f64();
    let gap = stats.t - stats.s * stats.s / n;
    if !(gap > 0.0) {
        return Err(Error::Support {
            x: stats.s,
            y: stats.t,
        });
    }
    Ok(stats.s * stats.s / (2.0 * stats.t) - stats.t / (2.0 * params.variance())
        + 0.5 * (n - 3.0) * gap.ln())
}

/// ψ(x, y) = ½(-x/y + y - ln(y - x)) on D+.
pub fn psi(p: RescaledPoint) -> Result<f64> {
    p.check()?;
    Ok(psi_extended(p.x, p.y))
}

/// The ψ formula without the x >= 0 restriction. It is analytic on
/// {y > max(x, 0)}, which central differences at x = 0 need.
pub(crate) fn psi_extended(x: f64, y: f64) -> f64 {
    0.5 * (-x / y + y - (y - x).ln())
}

/// φ(x, y) = (y - x)^{-3/2} on D+.
pub fn phi_weight(p: RescaledPoint) -> Result<f64> {
    p.check()?;
    Ok((-1.5 * (p.y - p.x).ln()).exp())
}

/// Log of the unnormalized density of (S_n / n^alpha, T_n / n^beta) for σ = 1:
/// -n ψ(x²/n^{2-2alpha}, y/n^{1-beta}) + ln φ(same point).
///
/// Equals `log_joint_density_unnormalized` at (x n^alpha, y n^beta) minus
/// ((n-3)/2) ln n.
pub fn log_rescaled_density_unnormalized(
    x: f64,
    y: f64,
    params: &ModelParams,
    exps: ScalingExponents,
) -> Result<f64> {
    params.require_closed_form()?;
    if params.sigma != 1.0 {
        return Err(Error::InvalidParameter(format!(
            "rescaled density is stated for sigma = 1, got {}; rescale the inputs first",
            params.sigma
        )));
    }
    let n = params.n_f64();
    let point = RescaledPoint::new(
        x * x / n.powf(2.0 - 2.0 * exps.alpha),
        y / n.powf(1.0 - exps.beta),
    );
    if !point.in_domain() {
        return Err(Error::Support { x, y });
    }
    let gap = point.y - point.x;
    Ok(-n * psi_extended(point.x, point.y) - 1.5 * gap.ln())
}
