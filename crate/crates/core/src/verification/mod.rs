//! Numerical checks of the exact results behind the model: the complex
//! Gaussian integral and principal logarithm, the characteristic function of
//! (S_n, T_n) and its Fourier inversion, the normalization constant C_n, and
//! the Laplace analysis around the minimum of ψ.

pub mod complex;
pub mod fourier;
pub mod ks;
pub mod laplace;
pub mod normalization;
mod report;
pub mod suite;

pub use complex::{complex_gaussian_integral, complex_pow, gamma_law_cf, principal_log, ComplexValue};
pub use fourier::{char_fn, density_by_inversion, density_closed_form, InversionResult};
pub use ks::{ks_statistic, ks_statistic_unsorted};
pub use laplace::psi_expansion_check;
pub use normalization::{estimate_c_n, laplace_ratio, NormalizationEstimate};
pub use report::CheckReport;
pub use suite::{run_suite, Suite, SuiteOptions, Tolerances};
