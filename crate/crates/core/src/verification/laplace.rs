//! Finite-difference checks of the local expansion
//! ψ(x, y) - ½ = ¼(x² + (y - 1)²) + o(|x|² + |y - 1|²) at the minimum (0, 1).

use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::model::{psi, psi_extended, RescaledPoint};

const EPS: f64 = f64::EPSILON;

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h < 0.1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("finite-difference step must lie in (0, 0.1), got {h}")))
    }
}

/// Central-difference gradient of ψ at (0, 1).
pub fn psi_gradient_fd(h: f64) -> Result<[f64; 2]> {
    check_step(h)?;
    let f = psi_extended;
    Ok([
        (f(h, 1.0) - f(-h, 1.0)) / (2.0 * h),
        (f(0.0, 1.0 + h) - f(0.0, 1.0 - h)) / (2.0 * h),
    ])
}

/// Central-difference Hessian of ψ at (0, 1), as [ψ_xx, ψ_yy, ψ_xy].
pub fn psi_hessian_fd(h: f64) -> Result<[f64; 3]> {
    check_step(h)?;
    let f = psi_extended;
    let c = f(0.0, 1.0);
    let h2 = h * h;
    let xx = (f(h, 1.0) - 2.0 * c + f(-h, 1.0)) / h2;
    let yy = (f(0.0, 1.0 + h) - 2.0 * c + f(0.0, 1.0 - h)) / h2;
    let xy = (f(h, 1.0 + h) - f(h, 1.0 - h) - f(-h, 1.0 + h) + f(-h, 1.0 - h)) / (4.0 * h2);
    Ok([xx, yy, xy])
}

/// Largest deviation of the finite-difference Hessian from diag(½, ½), with
/// tolerance 10h² + 10ε/h² (truncation plus roundoff).
pub fn psi_expansion_check(h: f64) -> Result<CheckReport> {
    let [xx, yy, xy] = psi_hessian_fd(h)?;
    let deviation = (xx - 0.5).abs().max((yy - 0.5).abs()).max(xy.abs());
    let tolerance = 10.0 * h * h + 10.0 * EPS / (h * h);
    Ok(CheckReport::absolute("laplace.psi_hessian", deviation, 0.0, tolerance)
        .note(format!("h = {h}; psi_xx = {xx}, psi_yy = {yy}, psi_xy = {xy}")))
}

/// Largest gradient component at (0, 1); tolerance 10h² + 10ε/h.
pub fn psi_gradient_check(h: f64) -> Result<CheckReport> {
    let [gx, gy] = psi_gradient_fd(h)?;
    let tolerance = 10.0 * h * h + 10.0 * EPS / h;
    Ok(CheckReport::absolute("laplace.psi_gradient", gx.abs().max(gy.abs()), 0.0, tolerance)
        .note(format!("h = {h}; gradient = ({gx}, {gy})")))
}

pub fn psi_minimum_check(tolerance: f64) -> Result<CheckReport> {
    let value = psi(RescaledPoint::new(0.0, 1.0))?;
    Ok(CheckReport::absolute("laplace.psi_minimum", value, 0.5, tolerance))
}

/// Smallest ψ on a grid of D+ ∩ [0, 3] × (0, 4] outside the box
/// max(|x|, |y - 1|) <= delta. Must exceed ½.
pub fn psi_outside_box_min(delta: f64, step: f64) -> Result<(f64, RescaledPoint)> {
    if !(delta > 0.0 && step > 0.0 && step < delta) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < step < delta, got step = {step}, delta = {delta}"
        )));
    }
    let nx = (3.0 / step).round() as usize;
    let ny = (4.0 / step).round() as usize;
    let mut best = (f64::INFINITY, RescaledPoint::new(0.0, 1.0));
    for i in 0..=nx {
        let x = i as f64 * step;
        for j in 1..=ny {
            let y = j as f64 * step;
            let p = RescaledPoint::new(x, y);
            if !p.in_domain() || (x.abs() <= delta && (y - 1.0).abs() <= delta) {
                continue;
            }
            let v = psi(p)?;
            if v < best.0 {
                best = (v, p);
            }
        }
    }
    Ok(best)
}

pub fn psi_outside_box_check(delta: f64, step: f64) -> Result<CheckReport> {
    let (value, at) = psi_outside_box_min(delta, step)?;
    Ok(CheckReport::above("laplace.psi_outside_box", value, 0.5)
        .note(format!("delta = {delta}, grid step = {step}, minimum at ({}, {})", at.x, at.y)))
}

/// Smallest (ψ - ½) / (x² + (y - 1)²) on a grid of D+ ∩ {x < r, |y - 1| < r},
/// excluding (0, 1).
pub fn psi_local_ratio_min(radius: f64, step: f64) -> Result<f64> {
    if !(radius > 0.0 && step > 0.0 && step < radius) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < step < radius, got step = {step}, radius = {radius}"
        )));
    }
    let cells = (radius / step).ceil() as i64;
    let mut best = f64::INFINITY;
    for i in 0..cells {
        let x = i as f64 * step;
        for j in (1 - cells)..cells {
            let y = 1.0 + j as f64 * step;
            let p = RescaledPoint::new(x, y);
            let r2 = x * x + (y - 1.0) * (y - 1.0);
            if r2 == 0.0 || !p.in_domain() {
                continue;
            }
            best = best.min((psi(p)? - 0.5) / r2);
        }
    }
    Ok(best)
}

/// Radii tried, largest first, when calibrating the local quadratic bound.
pub const LOCAL_BOUND_RADII: [f64; 5] = [0.5, 0.4, 0.3, 0.2, 0.1];

/// ψ - ½ >= ⅛(x² + (y - 1)²) near (0, 1): reports the grid minimum of the
/// ratio at the largest radius in [`LOCAL_BOUND_RADII`] where it holds.
pub fn psi_local_bound_check(step: f64) -> Result<CheckReport> {
    let mut last = None;
    for radius in LOCAL_BOUND_RADII {
        let ratio = psi_local_ratio_min(radius, step)?;
        last = Some((radius, ratio));
        if ratio > 0.125 {
            break;
        }
    }
    let (radius, ratio) = last.expect("at least one radius");
    Ok(CheckReport::above("laplace.psi_local_bound", ratio, 0.125)
        .note(format!("calibrated radius {radius}, grid step {step}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_is_half_identity() {
        let [xx, yy, xy] = psi_hessian_fd(1e-4).unwrap();
        assert!((xx - 0.5).abs() < 1e-4 && (yy - 0.5).abs() < 1e-4 && xy.abs() < 1e-4);
        let r = psi_expansion_check(1e-4).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn gradient_vanishes() {
        let [gx, gy] = psi_gradient_fd(1e-4).unwrap();
        assert!(gx.abs() < 1e-6 && gy.abs() < 1e-6);
        assert!(psi_gradient_check(1e-3).unwrap().pass);
    }

    #[test]
    fn minimum_is_exactly_half() {
        assert!(psi_minimum_check(1e-14).unwrap().pass);
        assert!(psi_minimum_check(0.0).unwrap().pass);
    }

    #[test]
    fn outside_the_box_psi_exceeds_half() {
        let (v, at) = psi_outside_box_min(0.1, 0.01).unwrap();
        // The infimum over the box boundary is ψ(0, 1.1) = ½(1.1 - ln 1.1).
        let edge = 0.5 * (1.1 - 1.1f64.ln());
        assert!(v > 0.5 && v >= edge - 1e-12, "{v} at {at:?}");
        assert!((v - edge).abs() < 1e-3);
    }

    #[test]
    fn local_quadratic_bound_holds_at_half() {
        let r = psi_local_bound_check(0.005).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.details.contains("radius 0.5"));
        // Near the centre the ratio tends to the Hessian value ¼.
        assert!((psi_local_ratio_min(0.01, 0.001).unwrap() - 0.25).abs() < 0.01);
    }

    #[test]
    fn step_is_validated() {
        assert!(psi_expansion_check(0.0).is_err());
        assert!(psi_expansion_check(0.2).is_err());
        assert!(psi_outside_box_min(0.1, 0.2).is_err());
    }
}
