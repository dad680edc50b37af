//! C_n and Z_n against an exact series.
//!
//! Under the untilted law, S_n²/(n T_n) ~ Beta(½, (n-1)/2) independently of
//! σ, so Z_n = E[exp((n/2) B)] = ₁F₁(½; n/2; n/2).

use cwsoc::verification::normalization::{
    estimate_c_n, laplace_ratio, laplace_ratio_of, log_c_n_direct, log_z_offset,
};
use cwsoc::Error;

fn log_z_series(n: usize) -> f64 {
    let b = 0.5 * n as f64;
    let (mut term, mut sum) = (1.0f64, 1.0f64);
    for k in 0..10_000 {
        let k = k as f64;
        term *= (0.5 + k) / (b + k) * b / (k + 1.0);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum.ln()
}

#[test]
fn series_oracle_sanity() {
    // Z_n lies between 1 and e^{n/2}, and tends to infinity slowly.
    for n in [5, 10, 100] {
        let lz = log_z_series(n);
        assert!(lz > 0.0 && lz < 0.5 * n as f64);
    }
    assert!((log_z_series(5).exp() - 1.96535).abs() < 1e-5);
}

#[test]
fn log_z_matches_series() {
    for n in (5..=30).chain([50, 100, 200, 400]) {
        let est = estimate_c_n(n, 1e-10).unwrap();
        let exact = log_z_series(n);
        assert!((est.log_z_n - exact).abs() < 1e-8, "n = {n}: {} vs {exact}", est.log_z_n);
        assert!(est.quadrature_error_bound < 1e-7, "n = {n}: {}", est.quadrature_error_bound);
        assert!((est.log_c_n - est.log_z_n - log_z_offset(n).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn bound_holds_over_the_default_sweep() {
    for n in 5..=30 {
        let est = estimate_c_n(n, 1e-9).unwrap();
        assert!(est.log_z_n >= 0.0 && est.log_z_n <= 0.5 * n as f64);
    }
}

#[test]
fn two_routes_agree_at_five() {
    let est = estimate_c_n(5, 1e-10).unwrap();
    let direct = log_c_n_direct(5, 1e-10).unwrap();
    assert!(((est.log_c_n - direct).exp() - 1.0).abs() < 1e-6);
    let series = log_z_series(5) + log_z_offset(5).unwrap();
    assert!((direct - series).abs() < 1e-8);
}

#[test]
fn laplace_ratio_converges() {
    let r100 = laplace_ratio(100).unwrap();
    let r400 = laplace_ratio(400).unwrap();
    assert!((0.85..=1.15).contains(&r100), "{r100}");
    assert!((0.92..=1.08).contains(&r400), "{r400}");
    assert!((r400 - 1.0).abs() < (r100 - 1.0).abs());
    // Values from the exact series at the same n.
    assert!((r100 - 1.0763).abs() < 1e-3, "{r100}");
    assert!((r400 - 1.0359).abs() < 1e-3, "{r400}");
    let est = estimate_c_n(1000, 1e-9).unwrap();
    let r1000 = laplace_ratio_of(&est).unwrap();
    assert!((r1000 - 1.0).abs() < (r400 - 1.0).abs());
}

#[test]
fn small_orders_are_rejected() {
    for n in 0..5 {
        assert_eq!(estimate_c_n(n, 1e-6).unwrap_err(), Error::UnsupportedOrder(n));
    }
}
