//! The quartic limit law of S_n / n^{3/4}: density
//! exp(-x⁴/(4σ⁴)) / ((σ/√2) Γ(1/4)).
//!
//! With u = x⁴/(4σ⁴) the law of |X|⁴/(4σ⁴) is Gamma(1/4, 1), which gives the
//! CDF through the regularized incomplete gamma function, the closed-form even
//! moments and an exact sampler.

use std::f64::consts::SQRT_2;

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::special::{gamma_fn, ln_gamma, regularized_lower_gamma, regularized_upper_gamma};

const QUARTER: f64 = 0.25;

/// ∫ exp(-y⁴/(4σ⁴)) dy = (σ/√2) Γ(1/4).
pub fn normalizer(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(sigma / SQRT_2 * gamma_fn(QUARTER)?)
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "sigma must be positive and finite, got {sigma}"
        )))
    }
}

/// Quartic law with scale σ.
#[derive(Debug, Clone)]
pub struct QuarticLaw {
    sigma: f64,
    log_normalizer: f64,
    gamma: Gamma<f64>,
}

impl QuarticLaw {
    pub fn new(sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        let log_normalizer = sigma.ln() - 0.5 * 2f64.ln() + ln_gamma(QUARTER)?;
        let gamma = Gamma::new(QUARTER, 1.0)
            .map_err(|e| Error::InvalidParameter(format!("gamma variate: {e}")))?;
        Ok(Self {
            sigma,
            log_normalizer,
            gamma,
        })
    }

    pub fn standard() -> Self {
        Self::new(1.0).expect("unit scale is valid")
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// ln[(σ/√2) Γ(1/4)].
    pub fn log_normalizer(&self) -> f64 {
        self.log_normalizer
    }

    pub fn normalizer(&self) -> f64 {
        self.log_normalizer.exp()
    }

    /// x⁴ / (4σ⁴), the Gamma(1/4, 1) variable of the law.
    fn gamma_argument(&self, x: f64) -> f64 {
        let r = x / self.sigma;
        let r2 = r * r;
        0.25 * r2 * r2
    }

    pub fn density(&self, x: f64) -> f64 {
        (-self.gamma_argument(x) - self.log_normalizer).exp()
    }

    pub fn log_density(&self, x: f64) -> f64 {
        -self.gamma_argument(x) - self.log_normalizer
    }

    /// ½ + ½ P(1/4, x⁴/(4σ⁴)) for x >= 0; for x < 0 the reflected tail
    /// ½ Q(1/4, x⁴/(4σ⁴)), which keeps the left tail accurate.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let u = self.gamma_argument(x);
        if x >= 0.0 {
            0.5 + 0.5 * regularized_lower_gamma(QUARTER, u).expect("u >= 0")
        } else {
            0.5 * regularized_upper_gamma(QUARTER, u).expect("u >= 0")
        }
    }

    /// Inverse CDF by bracketing and bisection to full f64 resolution.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile needs 0 < p < 1, got {p}")));
        }
        if p == 0.5 {
            return Ok(0.0);
        }
        let (mut lo, mut hi) = if p > 0.5 {
            let mut hi = self.sigma;
            while self.cdf(hi) < p {
                hi *= 2.0;
            }
            (0.0, hi)
        } else {
            let mut lo = -self.sigma;
            while self.cdf(lo) > p {
                lo *= 2.0;
            }
            (lo, 0.0)
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// E[X^{2m}] = (4σ⁴)^{m/2} Γ((2m+1)/4) / Γ(1/4), for m >= 1.
    pub fn even_moment(&self, m: u32) -> Result<f64> {
        if m == 0 {
            return Err(Error::Domain("moment order must be at least 1".into()));
        }
        let m = m as f64;
        let log_scale = 0.5 * m * (4.0 * self.sigma.powi(4)).ln();
        Ok((log_scale + ln_gamma((2.0 * m + 1.0) / 4.0)? - ln_gamma(QUARTER)?).exp())
    }

    /// Odd moments vanish by symmetry.
    pub fn odd_moment(&self, _m: u32) -> f64 {
        0.0
    }
}

/// The draw ±(4σ⁴ g)^{1/4} for a Gamma(1/4, 1) variate g.
pub fn quartic_from_gamma(g: f64, sigma: f64, positive: bool) -> f64 {
    let magnitude = sigma * SQRT_2 * g.sqrt().sqrt();
    if positive {
        magnitude
    } else {
        -magnitude
    }
}

impl Distribution<f64> for QuarticLaw {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let g = self.gamma.sample(rng);
        let positive: bool = rng.random();
        quartic_from_gamma(g, self.sigma, positive)
    }
}
