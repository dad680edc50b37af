//! Principal logarithm, complex powers, and the complex Gaussian integral
//! ∫ e^{itx - ζx²/2} dx for Re ζ > 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, uniform_breaks, QuadConfig};

pub type ComplexValue = Complex64;

/// Principal value of the complex logarithm on C \ (-∞, 0], via the
/// half-angle form ½ ln(x² + y²) + 2i arctan(y / (x + √(x² + y²))).
///
/// For x < 0 the denominator x + r is rewritten as y² / (r - x), which is the
/// same quantity without cancellation next to the branch cut.
pub fn principal_log(z: ComplexValue) -> Result<ComplexValue> {
    let (x, y) = (z.re, z.im);
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!("Log({z}) needs a finite argument")));
    }
    if y == 0.0 && x <= 0.0 {
        return Err(Error::Domain(format!("{z} lies on the branch cut (-inf, 0]")));
    }
    let r = x.hypot(y);
    let denom = if x >= 0.0 { x + r } else { y * y / (r - x) };
    Ok(Complex64::new(r.ln(), 2.0 * (y / denom).atan()))
}

/// z^a = exp(a Log z).
pub fn complex_pow(z: ComplexValue, a: ComplexValue) -> Result<ComplexValue> {
    Ok((a * principal_log(z)?).exp())
}

/// Closed form of ∫_R e^{itx - ζx²/2} dx:
/// √(2π / Re ζ) exp(-t²/(2ζ)) (1 + i Im ζ / Re ζ)^{-1/2}.
pub fn complex_gaussian_integral(t: f64, zeta: ComplexValue) -> Result<ComplexValue> {
    if !(zeta.re > 0.0) {
        return Err(Error::Domain(format!(
            "Gaussian integral needs Re(zeta) > 0, got {zeta}"
        )));
    }
    let a = zeta.re;
    let ratio = Complex64::new(1.0, zeta.im / a);
    let power = complex_pow(ratio, Complex64::new(-0.5, 0.0))?;
    let gauss = (-(t * t) / (2.0 * zeta)).exp();
    Ok((2.0 * PI / a).sqrt() * gauss * power)
}

/// The same integral by adaptive quadrature, truncated where
/// e^{-Re ζ x²/2} < e^{-40} (and never inside |x| = 12).
pub fn gaussian_integral_by_quadrature(t: f64, zeta: ComplexValue, abs_tol: f64) -> Result<ComplexValue> {
    if !(zeta.re > 0.0) {
        return Err(Error::Domain(format!(
            "Gaussian integral needs Re(zeta) > 0, got {zeta}"
        )));
    }
    let radius = (80.0 / zeta.re).sqrt().max(12.0);
    // Roughly two panels per oscillation of the chirp and the linear phase.
    let phase = zeta.im.abs() * radius * radius / 2.0 + t.abs() * radius;
    let panels = (2.0 * phase / PI).ceil() as usize + 8;
    let breaks = uniform_breaks(-radius, radius, panels);
    let cfg = QuadConfig::absolute(abs_tol).with_max_intervals(200_000);
    let integrand = |x: f64| Complex64::new(-zeta.re * x * x / 2.0, t * x - zeta.im * x * x / 2.0).exp();
    Ok(integrate_panels(integrand, &breaks, &cfg).value)
}

/// Characteristic function (1 - iθu)^{-k} of the Gamma(k, θ) law.
pub fn gamma_law_cf(u: f64, shape: f64, scale: f64) -> Result<ComplexValue> {
    if !(shape > 0.0 && scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Gamma law needs positive shape and scale, got ({shape}, {scale})"
        )));
    }
    complex_pow(Complex64::new(1.0, -scale * u), Complex64::new(-shape, 0.0))
}
