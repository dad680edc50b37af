//! Simulation and numerical verification for the Curie-Weiss model of
//! self-organized criticality with a centered Gaussian base measure.
//!
//! The tilted measure on R^n is
//!
//! ```text
//! dμ(x) ∝ exp( (Σx_i)² / (2 Σx_i²) ) Π dN(0, σ²)(x_i)
//! ```
//!
//! and S_n / n^{3/4} converges to the law with density proportional to
//! exp(-x⁴ / (4σ⁴)). The crate is organised as:
//!
//! * [`model`]: parameters, sufficient statistics, exact log-densities of
//!   (S_n, T_n) and the Laplace functions ψ and φ.
//! * [`limit_law`] and [`special`]: the quartic limit law and the Gamma
//!   functions it needs.
//! * [`sampler`]: single-site Metropolis chains and the importance-sampling
//!   route through the untilted law.
//! * [`verification`]: characteristic functions, Fourier inversion,
//!   normalisation constants and the check suite.
//! * [`quadrature`] and [`stats`]: numerical plumbing.

pub mod error;
pub mod limit_law;
pub mod model;
pub mod quadrature;
pub mod sampler;
pub mod special;
pub mod stats;
pub mod verification;

pub use error::{Error, Result};
pub use limit_law::QuarticLaw;
pub use model::{Configuration, ModelParams, RescaledPoint, ScalingExponents, SumStats};
pub use sampler::{ChainState, SampleRecord, SamplerConfig};
pub use verification::CheckReport;
