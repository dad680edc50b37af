//! The verification suite: named groups of checks, run in parallel and
//! merged by name.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::complex::{complex_gaussian_integral, gamma_law_cf, gaussian_integral_by_quadrature, principal_log};
use super::fourier::{char_fn, closed_form_mass, density_by_inversion, density_closed_form};
use super::laplace::{
    psi_expansion_check, psi_gradient_check, psi_local_bound_check, psi_minimum_check, psi_outside_box_check,
};
use super::normalization::{estimate_c_n, laplace_ratio_of, log_c_n_direct};
use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::sampler::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Complex,
    Density,
    Laplace,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Self::Complex),
            "density" => Ok(Self::Density),
            "laplace" => Ok(Self::Laplace),
            "all" => Ok(Self::All),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite '{other}' (expected complex, density, laplace or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Complex => "complex",
            Self::Density => "density",
            Self::Laplace => "laplace",
            Self::All => "all",
        })
    }
}

/// Tolerances used by the suite, keyed by the names accepted on the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances(BTreeMap<&'static str, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        Self(BTreeMap::from([
            ("gaussian_integral", 1e-8),
            ("log", 1e-13),
            ("cf_power", 1e-10),
            ("gamma_cf", 1e-14),
            ("inversion", 1e-3),
            ("inversion_imag", 1e-6),
            ("density_mass", 1e-6),
            ("c_n_routes", 1e-6),
            ("psi_minimum", 1e-14),
            ("hessian_step", 1e-4),
            ("ratio_100", 0.15),
            ("ratio_400", 0.08),
        ]))
    }
}

impl Tolerances {
    pub fn get(&self, key: &str) -> f64 {
        self.0[key]
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.keys().copied()
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance {key} must be positive, got {value}")));
        }
        match self.0.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::InvalidParameter(format!(
                "unknown tolerance '{key}' (known: {})",
                self.keys().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Orders at which the normalization bound 0 <= log Z_n <= n/2 is checked.
    pub n_list: Vec<usize>,
    pub tolerances: Tolerances,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            n_list: (5..=30).collect(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Probe grid for the complex Gaussian integral.
pub const GAUSSIAN_T: [f64; 3] = [0.0, 1.0, 2.5];
pub const GAUSSIAN_ZETA: [(f64, f64); 4] = [(1.0, 0.0), (1.0, 2.0), (1.0, -2.0), (0.2, 3.0)];

/// Orders and in-support probe points for the inversion round trip:
/// y ∈ {n/2, n, 2n}, x = c √(n y) with c ∈ {0, 0.3, 0.55, 0.7}.
pub const INVERSION_ORDERS: [usize; 3] = [5, 6, 8];

pub fn inversion_probes(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let mut out = Vec::with_capacity(12);
    for y in [0.5 * nf, nf, 2.0 * nf] {
        for c in [0.0, 0.3, 0.55, 0.7] {
            out.push((c * (nf * y).sqrt(), y));
        }
    }
    out
}

fn gaussian_checks(tol: f64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for t in GAUSSIAN_T {
        for (re, im) in GAUSSIAN_ZETA {
            let zeta = Complex64::new(re, im);
            let name = format!("complex.gaussian_integral.t={t}.zeta={re}{im:+}i");
            let report = complex_gaussian_integral(t, zeta).and_then(|closed| {
                let quad = gaussian_integral_by_quadrature(t, zeta, 0.01 * tol)?;
                Ok(CheckReport::absolute(&name, (closed - quad).norm(), 0.0, tol)
                    .note(format!("closed form {closed}, quadrature {quad}")))
            });
            out.push(report.unwrap_or_else(|e| CheckReport::failed(&name, e)));
        }
    }
    out
}

/// Largest |Log z - (ln|z| + i atan2(y, x))| over `count` random points of
/// C \ (-∞, 0], half of them within 1e-3 of the cut.
pub fn log_vs_atan2(count: usize, seed: u64) -> Result<f64> {
    let mut rng = stream_rng(seed, 0);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let r = 10f64.powf(rng.random_range(-3.0..3.0));
        let theta = if k % 2 == 0 {
            rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
        } else {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sign * (std::f64::consts::PI - rng.random_range(1e-9..1e-3))
        };
        let z = Complex64::from_polar(r, theta);
        if z.im == 0.0 && z.re <= 0.0 {
            continue;
        }
        let log = principal_log(z)?;
        let oracle = Complex64::new(z.norm().ln(), z.im.atan2(z.re));
        worst = worst.max((log - oracle).norm());
    }
    Ok(worst)
}

/// Largest |Φ_n - Φ_1ⁿ| (repeated multiplication) over a fixed grid, n <= 10.
pub fn cf_power_deviation() -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        for u in [-1.5, -0.3, 0.0, 0.4, 2.0] {
            for v in [-3.0, -0.5, 0.0, 0.25, 1.0, 4.0] {
                let one = char_fn(u, v, 1);
                let power = (1..n).fold(one, |acc, _| acc * one);
                worst = worst.max((char_fn(u, v, n) - power).norm());
            }
        }
    }
    worst
}

fn complex_checks(t: &Tolerances) -> Vec<Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>> {
    let gi = t.get("gaussian_integral");
    let log_tol = t.get("log");
    let cf_tol = t.get("cf_power");
    let gamma_tol = t.get("gamma_cf");
    vec![
        Box::new(move || gaussian_checks(gi)),
        Box::new(move || {
            let name = "complex.log_vs_atan2";
            vec![match log_vs_atan2(1_000, 17) {
                Ok(d) => CheckReport::absolute(name, d, 0.0, log_tol).note("1000 points of C \\ (-inf, 0]"),
                Err(e) => CheckReport::failed(name, e),
            }]
        }),
        Box::new(move || {
            let name = "complex.log_examples";
            let value = principal_log(Complex64::new(1.0, 0.0))
                .and_then(|a| Ok((a.norm(), principal_log(Complex64::new(0.0, 1.0))?)))
                .map(|(a, b)| a.max((b - Complex64::new(0.0, std::f64::consts::FRAC_PI_2)).norm()));
            vec![match value {
                Ok(d) => CheckReport::absolute(name, d, 0.0, log_tol).note("Log 1 = 0, Log i = iπ/2"),
                Err(e) => CheckReport::failed(name, e),
            }]
        }),
        Box::new(move || {
            vec![CheckReport::absolute("complex.cf_power", cf_power_deviation(), 0.0, cf_tol)
                .note("Φ_n vs Φ_1^n by repeated multiplication, n = 1..10")]
        }),
        Box::new(move || {
            let name = "complex.gamma_cf_exponential";
            let mut worst: f64 = 0.0;
            for u in [-3.0, -0.4, 0.7, 5.0] {
                match gamma_law_cf(u, 1.0, 1.3) {
                    Ok(cf) => worst = worst.max((cf - 1.0 / Complex64::new(1.0, -1.3 * u)).norm()),
                    Err(e) => return vec![CheckReport::failed(name, e)],
                }
            }
            vec![CheckReport::absolute(name, worst, 0.0, gamma_tol).note("shape 1 vs 1/(1 - iθu)")]
        }),
    ]
}

fn inversion_checks(n: usize, tol: f64, imag_tol: f64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut worst_imag: f64 = 0.0;
    for (x, y) in inversion_probes(n) {
        let name = format!("density.inversion.n={n}.x={x:.4}.y={y}");
        let report = density_closed_form(x, y, n).and_then(|exact| {
            let inv = density_by_inversion(x, y, n, 0.1 * tol.min(imag_tol * 100.0))?;
            worst_imag = worst_imag.max(inv.imag_residue);
            Ok(CheckReport::absolute(&name, inv.value, exact, tol)
                .note(format!("v radius {:.1}, imaginary residue {:.3e}", inv.v_radius, inv.imag_residue)))
        });
        out.push(report.unwrap_or_else(|e| CheckReport::failed(&name, e)));
    }
    out.push(
        CheckReport::absolute(format!("density.inversion_imag.n={n}"), worst_imag, 0.0, imag_tol)
            .note("largest |Im| over the probe points"),
    );
    out
}

fn density_checks(opts: &SuiteOptions) -> Vec<Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>> {
    let t = &opts.tolerances;
    let (inv_tol, imag_tol) = (t.get("inversion"), t.get("inversion_imag"));
    let mass_tol = t.get("density_mass");
    let routes_tol = t.get("c_n_routes");
    let mut checks: Vec<Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>> = Vec::new();
    for n in INVERSION_ORDERS {
        checks.push(Box::new(move || inversion_checks(n, inv_tol, imag_tol)));
    }
    checks.push(Box::new(move || {
        let name = "density.mass.n=6";
        vec![match closed_form_mass(6, 0.01 * mass_tol) {
            Ok(m) => CheckReport::absolute(name, m, 1.0, mass_tol),
            Err(e) => CheckReport::failed(name, e),
        }]
    }));
    checks.push(Box::new(move || {
        let name = "density.c_n_routes.n=5";
        let report = estimate_c_n(5, 1e-3 * routes_tol).and_then(|est| {
            let direct = log_c_n_direct(5, 1e-3 * routes_tol)?;
            Ok(CheckReport::relative(name, est.log_c_n.exp(), direct.exp(), routes_tol)
                .note("rescaled route vs direct (s, t) quadrature"))
        });
        vec![report.unwrap_or_else(|e| CheckReport::failed(name, e))]
    }));
    for &n in &opts.n_list {
        checks.push(Box::new(move || {
            let name = format!("density.log_z_bound.n={n}");
            vec![match estimate_c_n(n, 1e-9) {
                Ok(est) => CheckReport::within(&name, est.log_z_n, 0.0, 0.5 * n as f64)
                    .note(format!("log C_n = {}", est.log_c_n)),
                Err(e) => CheckReport::failed(&name, e),
            }]
        }));
    }
    checks
}

fn laplace_checks(t: &Tolerances) -> Vec<Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>> {
    let psi_tol = t.get("psi_minimum");
    let h = t.get("hessian_step");
    let (r100, r400) = (t.get("ratio_100"), t.get("ratio_400"));
    vec![
        Box::new(move || {
            let mut out = Vec::new();
            for r in [
                psi_minimum_check(psi_tol),
                psi_expansion_check(h),
                psi_gradient_check(h),
                psi_outside_box_check(0.1, 0.01),
                psi_local_bound_check(0.005),
            ] {
                out.push(r.unwrap_or_else(|e| CheckReport::failed("laplace.psi", e)));
            }
            out
        }),
        Box::new(move || {
            let ratios = [100usize, 400].map(|n| estimate_c_n(n, 1e-9).and_then(|e| laplace_ratio_of(&e)));
            match ratios {
                [Ok(a), Ok(b)] => vec![
                    CheckReport::centered("laplace.ratio.n=100", a, 1.0, r100),
                    CheckReport::centered("laplace.ratio.n=400", b, 1.0, r400),
                    CheckReport::below("laplace.ratio_convergence", (b - 1.0).abs(), (a - 1.0).abs())
                        .note("|ratio(400) - 1| < |ratio(100) - 1|"),
                ],
                [a, b] => {
                    let e = a.err().or(b.err()).expect("one ratio failed");
                    ["laplace.ratio.n=100", "laplace.ratio.n=400", "laplace.ratio_convergence"]
                        .map(|name| CheckReport::failed(name, &e))
                        .to_vec()
                }
            }
        }),
    ]
}

/// Runs the selected suite. Checks run in parallel; reports are sorted by name.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<CheckReport> {
    let mut checks = Vec::new();
    if suite.includes(Suite::Complex) {
        checks.extend(complex_checks(&opts.tolerances));
    }
    if suite.includes(Suite::Density) {
        checks.extend(density_checks(opts));
    }
    if suite.includes(Suite::Laplace) {
        checks.extend(laplace_checks(&opts.tolerances));
    }
    let mut reports: Vec<CheckReport> = checks.par_iter().flat_map_iter(|c| c()).collect();
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}
