//! The normalization constant C_n of the (S_n, T_n) density (σ = 1),
//!
//! ```text
//! C_n = ∫∫_{s² < nt} exp(s²/(2t) - t/2) (t - s²/n)^{(n-3)/2} ds dt
//!     = Z_n √(2ⁿπn) Γ((n-1)/2),
//! ```
//!
//! and the Laplace asymptotic C_n ~ n^{7/4 + (n-3)/2} √(4π/n) e^{-n/2} ∫e^{-x⁴/4}.
//!
//! All constants are carried as logarithms. The main route integrates in
//! (x̃, ỹ) = (s/n^{3/4}, t/n), where the integrand is e^{-n(ψ - ½)} φ and of
//! order one near its peak.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limit_law;
use crate::model::{log_rescaled_density_unnormalized, require_closed_form, ModelParams, ScalingExponents};
use crate::quadrature::{integrate, integrate_panels, QuadConfig};
use crate::special::ln_gamma;

/// How far below the peak (in log units) the integration range extends.
const LOG_RANGE: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationEstimate {
    pub n: usize,
    pub log_c_n: f64,
    /// log C_n - ½ ln(2ⁿπn) - ln Γ((n-1)/2).
    pub log_z_n: f64,
    /// Estimated relative error of C_n (equivalently, absolute error of its log).
    pub quadrature_error_bound: f64,
    /// ln ∫∫ e^{-n(ψ - ½)} φ dx̃ dỹ.
    pub log_rescaled_integral: f64,
}

/// ½ ln(2ⁿπn) + ln Γ((n-1)/2).
pub fn log_z_offset(n: usize) -> Result<f64> {
    require_closed_form(n)?;
    let nf = n as f64;
    Ok(0.5 * (nf * 2f64.ln() + PI.ln() + nf.ln()) + ln_gamma(0.5 * (nf - 1.0))?)
}

/// Peak of -n(ψ - ½) + ln φ over the rescaled domain, attained at
/// ỹ = (n-3)/n, x̃²/√n = 3(n-3)/n².
fn log_peak(n: f64) -> f64 {
    3.0 + (n - 3.0) * (1.0 - 3.0 / n).ln()
}

/// Largest value over x̃ of the log-integrand on the slice ỹ.
fn log_profile(n: f64, y: f64) -> f64 {
    1.5 + 0.5 * n * (1.0 - y) + 0.5 * (n - 3.0) * (y * (n - 3.0) / n).ln()
}

/// Breakpoints 0, 0.5, 1, 2, 4, ... below `end`, then `end`.
fn geometric_breaks(end: f64) -> Vec<f64> {
    let mut breaks = vec![0.0];
    let mut b = 0.5;
    while b < end {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(end);
    breaks
}

/// C_n by nested quadrature in rescaled coordinates with relative tolerance
/// `tol`. Fails hard if the derived log Z_n leaves [0, n/2].
pub fn estimate_c_n(n: usize, tol: f64) -> Result<NormalizationEstimate> {
    require_closed_form(n)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let nf = n as f64;
    let params = ModelParams::unit(n)?;
    let exps = ScalingExponents::default();
    let shift = log_peak(nf);
    let y_peak = (nf - 3.0) / nf;
    let y_width = (2.0 / nf).sqrt();

    let mut y_max = y_peak + y_width;
    while log_profile(nf, y_max) > shift - LOG_RANGE {
        y_max *= 1.5;
    }
    let mut outer_breaks = vec![0.0];
    for k in -8..=8 {
        let b = y_peak + k as f64 * y_width;
        if b > 0.0 && b < y_max {
            outer_breaks.push(b);
        }
    }
    outer_breaks.push(y_max);

    let inner_cfg = QuadConfig::relative(0.25 * tol).with_max_intervals(5_000);
    let mut inner_rel_error: f64 = 0.0;
    let mut inner_failed = None;
    let outer = integrate_panels(
        |y: f64| {
            if !(y > 0.0) {
                return 0.0;
            }
            let x_max = (nf.sqrt() * y).sqrt();
            let inner = integrate_panels(
                |x: f64| {
                    log_rescaled_density_unnormalized(x, y, &params, exps)
                        .map_or(0.0, |g| (g + 0.5 * nf - shift).exp())
                },
                &geometric_breaks(x_max),
                &inner_cfg,
            );
            if inner.value > 0.0 {
                inner_rel_error = inner_rel_error.max(inner.error / inner.value);
            }
            if !inner.converged && inner.value > 1e-300 {
                inner_failed = Some(y);
            }
            2.0 * inner.value
        },
        &outer_breaks,
        &QuadConfig::relative(0.5 * tol),
    );
    if let Some(y) = inner_failed {
        return Err(Error::Truncation {
            tol,
            reason: format!("inner x̃-integral did not converge at ỹ = {y}"),
        });
    }
    if !outer.converged || !(outer.value > 0.0) {
        return Err(Error::Truncation {
            tol,
            reason: "outer ỹ-integral did not converge".into(),
        });
    }

    let log_rescaled_integral = outer.value.ln() + shift;
    let log_c_n = (1.75 + 0.5 * (nf - 3.0)) * nf.ln() - 0.5 * nf + log_rescaled_integral;
    let log_z_n = log_c_n - log_z_offset(n)?;
    if !(0.0..=0.5 * nf).contains(&log_z_n) {
        return Err(Error::BoundViolation {
            n,
            log_z: log_z_n,
            upper: 0.5 * nf,
        });
    }
    Ok(NormalizationEstimate {
        n,
        log_c_n,
        log_z_n,
        quadrature_error_bound: outer.error / outer.value + inner_rel_error,
        log_rescaled_integral,
    })
}

/// log C_n by nested quadrature of the unrescaled integrand in (s, t).
/// Intended for small n, where no rescaling is needed.
pub fn log_c_n_direct(n: usize, tol: f64) -> Result<f64> {
    require_closed_form(n)?;
    let nf = n as f64;
    // The integrand is at most e^{n/2} e^{-t/2} t^{(n-3)/2}.
    let mut t_max = nf;
    while 0.5 * nf - 0.5 * t_max + 0.5 * (nf - 3.0) * t_max.ln() > -LOG_RANGE {
        t_max *= 1.5;
    }
    let inner_cfg = QuadConfig::relative(0.25 * tol);
    let mut inner_failed = None;
    let outer = integrate(
        |t: f64| {
            if !(t > 0.0) {
                return 0.0;
            }
            let s_max = (nf * t).sqrt();
            let inner = integrate(
                |s: f64| {
                    let gap = t - s * s / nf;
                    if gap > 0.0 {
                        (s * s / (2.0 * t) - 0.5 * t + 0.5 * (nf - 3.0) * gap.ln()).exp()
                    } else {
                        0.0
                    }
                },
                0.0,
                s_max,
                &inner_cfg,
            );
            if !inner.converged && inner.value > 1e-300 {
                inner_failed = Some(t);
            }
            2.0 * inner.value
        },
        0.0,
        t_max,
        &QuadConfig::relative(0.5 * tol),
    );
    if let Some(t) = inner_failed {
        return Err(Error::Truncation {
            tol,
            reason: format!("inner s-integral did not converge at t = {t}"),
        });
    }
    if !outer.converged {
        return Err(Error::Truncation {
            tol,
            reason: "outer t-integral did not converge".into(),
        });
    }
    Ok(outer.value.ln())
}

/// ln( √(4π/n) ∫e^{-x⁴/4} dx ), the Laplace prediction for ln ∫∫ e^{-n(ψ-½)} φ.
pub fn log_laplace_asymptote(n: usize) -> Result<f64> {
    require_closed_form(n)?;
    let quartic = limit_law::normalizer(1.0)?;
    Ok(0.5 * (4.0 * PI / n as f64).ln() + quartic.ln())
}

/// C_n / (n^{7/4} n^{(n-3)/2} √(4π/n) e^{-n/2} ∫e^{-x⁴/4}) from an estimate.
pub fn laplace_ratio_of(estimate: &NormalizationEstimate) -> Result<f64> {
    Ok((estimate.log_rescaled_integral - log_laplace_asymptote(estimate.n)?).exp())
}

/// [`laplace_ratio_of`] with C_n estimated to relative tolerance 1e-9.
pub fn laplace_ratio(n: usize) -> Result<f64> {
    laplace_ratio_of(&estimate_c_n(n, 1e-9)?)
}
