//! Characteristic function of the untilted law of (S_n, T_n) (σ = 1), its
//! closed-form density for n >= 5, and the density recovered by numerical
//! Fourier inversion.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::complex::{principal_log, ComplexValue};
use crate::error::{Error, Result};
use crate::model::require_closed_form;
use crate::quadrature::{integrate, integrate_panels, uniform_breaks, QuadConfig};
use crate::special::ln_gamma;

/// Φ_n(·, v) with the v-dependent pieces 1/(1 - 2iv) and Log(1 - 2iv) fixed.
#[derive(Debug, Clone, Copy)]
pub struct CharFnSlice {
    half_n: f64,
    inverse: ComplexValue,
    log: ComplexValue,
}

impl CharFnSlice {
    pub fn new(v: f64, n: usize) -> Self {
        let z = Complex64::new(1.0, -2.0 * v);
        Self {
            half_n: 0.5 * n as f64,
            inverse: 1.0 / z,
            log: principal_log(z).expect("1 - 2iv has positive real part"),
        }
    }

    /// exp(-(n/2)(u²/(1 - 2iv) + Log(1 - 2iv))).
    #[inline]
    pub fn eval(&self, u: f64) -> ComplexValue {
        (-(self.inverse * (u * u) + self.log) * self.half_n).exp()
    }
}

/// Φ_n(u, v) = E[exp(i u S_n + i v T_n)] for σ = 1.
pub fn char_fn(u: f64, v: f64, n: usize) -> ComplexValue {
    CharFnSlice::new(v, n).eval(u)
}

/// exp(-n u² / (2(1 + 4v²))) (1 + 4v²)^{-n/4}.
pub fn char_fn_modulus(u: f64, v: f64, n: usize) -> f64 {
    let q = 1.0 + 4.0 * v * v;
    let n = n as f64;
    (-n * u * u / (2.0 * q) - 0.25 * n * q.ln()).exp()
}

/// Log of the σ = 1 density of the untilted (S_n, T_n); `None` off the support.
pub fn log_density_closed_form(x: f64, y: f64, n: usize) -> Result<Option<f64>> {
    require_closed_form(n)?;
    let nf = n as f64;
    let gap = y - x * x / nf;
    if !(gap > 0.0) {
        return Ok(None);
    }
    let log_norm = 0.5 * (nf * 2f64.ln() + PI.ln() + nf.ln()) + ln_gamma(0.5 * (nf - 1.0))?;
    Ok(Some(-log_norm - 0.5 * y + 0.5 * (nf - 3.0) * gap.ln()))
}

/// (√(2ⁿπn) Γ((n-1)/2))^{-1} e^{-y/2} (y - x²/n)^{(n-3)/2} on x² < n y, else 0.
pub fn density_closed_form(x: f64, y: f64, n: usize) -> Result<f64> {
    Ok(log_density_closed_form(x, y, n)?.map_or(0.0, f64::exp))
}

/// Total mass of [`density_closed_form`] by nested adaptive quadrature.
pub fn closed_form_mass(n: usize, tol: f64) -> Result<f64> {
    require_closed_form(n)?;
    let nf = n as f64;
    // The y-marginal is chi-square with n degrees of freedom.
    let y_max = nf + 20.0 * (2.0 * nf).sqrt() + 60.0;
    let inner_cfg = QuadConfig::absolute(0.25 * tol / y_max);
    let outer_cfg = QuadConfig::absolute(0.5 * tol);
    let mut failure = None;
    let outer = integrate(
        |y: f64| {
            let half_width = (nf * y).sqrt();
            let inner = integrate(
                |x: f64| density_closed_form(x, y, n).unwrap_or(0.0),
                0.0,
                half_width,
                &inner_cfg,
            );
            if !inner.converged {
                failure = Some(y);
            }
            2.0 * inner.value
        },
        0.0,
        y_max,
        &outer_cfg,
    );
    if let Some(y) = failure {
        return Err(Error::Truncation {
            tol,
            reason: format!("inner x-integral did not converge at y = {y}"),
        });
    }
    Ok(outer.value)
}

/// Density recovered by 2-D Fourier inversion, with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionResult {
    /// Real part of (2π)^{-2} ∫∫ e^{-ixu - iyv} Φ_n(u, v) du dv.
    pub value: f64,
    /// |imaginary part|; zero for an exact real density.
    pub imag_residue: f64,
    /// Truncation radius of the v-integral.
    pub v_radius: f64,
    pub evaluations: usize,
}

/// Largest v-radius the inversion will attempt.
pub const MAX_V_RADIUS: f64 = 5_000.0;

/// Smallest v-radius whose dropped tails are below `budget` (in units of the
/// unnormalized double integral), or `None` if it exceeds [`MAX_V_RADIUS`].
///
/// Two bounds on ∫_{|v|>V} |∫ e^{-ixu} Φ_n du| are used, whichever is smaller:
/// the modulus bound √(2π/n) (1 + 4v²)^{-(n-2)/4}, integrable iff n > 4, and
/// an integration-by-parts bound for the oscillating tail, whose phase turns
/// at rate |y - x²/n| and whose amplitude decays like (2|v|)^{-(n-1)/2}.
pub fn inversion_v_radius(x: f64, y: f64, n: usize, budget: f64) -> Option<f64> {
    let nf = n as f64;
    let amp = (2.0 * PI / nf).sqrt();
    // Modulus bound: both tails ≤ 2 amp (2V)^{1-p} / (2(p-1)), p = (n-2)/2.
    let p = 0.5 * (nf - 2.0);
    let power = 0.5 * (amp / ((p - 1.0) * budget)).powf(1.0 / (p - 1.0));
    // Oscillatory bound: both tails ≤ 4 amp (2V)^{-m} / w, m = (n-1)/2.
    let w = (y - x * x / nf).abs();
    let m = 0.5 * (nf - 1.0);
    let oscillatory = if w > 0.0 {
        0.5 * (4.0 * amp / (w * budget)).powf(1.0 / m)
    } else {
        f64::INFINITY
    };
    let radius = power.min(oscillatory).max(1.0);
    (radius <= MAX_V_RADIUS).then_some(radius)
}

/// Density of the untilted (S_n, T_n) at (x, y) by quadrature of the
/// inversion integral. `tol` is the absolute accuracy target, split evenly
/// between truncation and quadrature.
pub fn density_by_inversion(x: f64, y: f64, n: usize, tol: f64) -> Result<InversionResult> {
    require_closed_form(n)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let nf = n as f64;
    let scale = 4.0 * PI * PI;
    let v_radius = inversion_v_radius(x, y, n, 0.5 * tol * scale).ok_or_else(|| Error::Truncation {
        tol,
        reason: format!(
            "v-tail at ({x}, {y}) needs a radius beyond {MAX_V_RADIUS}; the oscillation rate |y - x²/n| is too small"
        ),
    })?;

    let outer_tol = 0.25 * tol * scale;
    let inner_tol = 0.25 * tol * scale / (2.0 * v_radius);
    let mut evaluations = 0usize;
    let mut inner_failed = None;

    let outer_integrand = |v: f64| {
        let slice = CharFnSlice::new(v, n);
        let q = 1.0 + 4.0 * v * v;
        let u_radius = 6.0 * (q / nf).sqrt();
        // Φ_n is even in u, so ∫ e^{-ixu} Φ du = 2 ∫_0^U cos(xu) Φ du.
        let phase = nf * v.abs() * u_radius * u_radius / q + x.abs() * u_radius;
        let panels = (phase / (2.0 * PI)).ceil() as usize + 2;
        let breaks = uniform_breaks(0.0, u_radius, panels);
        let cfg = QuadConfig::absolute(inner_tol).with_max_intervals(100_000);
        let inner = integrate_panels(|u: f64| slice.eval(u) * (2.0 * (x * u).cos()), &breaks, &cfg);
        evaluations += inner.evaluations;
        if !inner.converged {
            inner_failed = Some(v);
        }
        inner.value * Complex64::new(0.0, -y * v).exp()
    };

    let outer_phase = (y.abs() + x * x / nf + nf) * v_radius;
    let panels = (outer_phase / PI).ceil() as usize + 4;
    let breaks = uniform_breaks(-v_radius, v_radius, panels);
    let cfg = QuadConfig::absolute(outer_tol).with_max_intervals(100_000);
    let outer = integrate_panels(outer_integrand, &breaks, &cfg);
    if let Some(v) = inner_failed {
        return Err(Error::Truncation {
            tol,
            reason: format!("inner u-integral did not converge at v = {v}"),
        });
    }
    if !outer.converged {
        return Err(Error::Truncation {
            tol,
            reason: "outer v-integral did not converge".into(),
        });
    }
    let value = outer.value / scale;
    Ok(InversionResult {
        value: value.re,
        imag_residue: value.im.abs(),
        v_radius,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_fn_examples() {
        assert_eq!(char_fn(0.0, 0.0, 7), Complex64::new(1.0, 0.0));
        for u in [0.3, -1.2, 2.0] {
            let v = char_fn(u, 0.0, 4);
            assert!((v - Complex64::new((-2.0 * u * u).exp(), 0.0)).norm() < 1e-15);
        }
        let v = char_fn(0.0, 0.5, 2);
        assert!((v - Complex64::new(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn char_fn_modulus_identity() {
        for (u, v) in [(0.2, 0.1), (-1.0, 2.5), (3.0, -0.7)] {
            for n in [1, 5, 12] {
                let z = char_fn(u, v, n);
                assert!((z.norm() - char_fn_modulus(u, v, n)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let v = density_closed_form(0.0, 5.0, 5).unwrap();
        let expected = 5.0 * (-2.5f64).exp() / (160.0 * PI).sqrt();
        assert!((v - expected).abs() < 1e-15);
        assert_eq!(density_closed_form(3.0, 1.0, 6).unwrap(), 0.0);
        assert_eq!(density_closed_form(0.0, -1.0, 6).unwrap(), 0.0);
        assert_eq!(density_closed_form(0.0, 1.0, 4), Err(Error::UnsupportedOrder(4)));
    }

    #[test]
    fn v_radius_prefers_the_tighter_tail() {
        // Deep inside the support the oscillatory bound is far smaller.
        let r = inversion_v_radius(0.0, 5.0, 5, 1e-3).unwrap();
        assert!(r < 200.0, "{r}");
        // With no oscillation (y = x²/n) the power tail of n = 5 is hopeless.
        assert!(inversion_v_radius(5.0, 5.0, 5, 1e-6).is_none());
        // Larger n decays fast enough on its own.
        assert!(inversion_v_radius(8.0, 8.0, 30, 1e-6).is_some());
    }

    #[test]
    fn inversion_recovers_a_point() {
        let exact = density_closed_form(0.0, 8.0, 8).unwrap();
        let r = density_by_inversion(0.0, 8.0, 8, 1e-6).unwrap();
        assert!((r.value - exact).abs() < 1e-5, "{} vs {exact}", r.value);
        assert!(r.imag_residue < 1e-6);
    }

    #[test]
    fn inversion_rejects_non_integrable_orders() {
        assert_eq!(
            density_by_inversion(0.0, 4.0, 4, 1e-4),
            Err(Error::UnsupportedOrder(4))
        );
        assert!(matches!(
            density_by_inversion(5.0, 5.0, 5, 1e-6),
            Err(Error::Truncation { .. })
        ));
    }
}
