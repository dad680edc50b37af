use thiserror::Error;

/// Errors raised by the model evaluations, samplers and numerical checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation point on or outside the boundary of the support.
    #[error("point ({x}, {y}) is outside the support")]
    Support { x: f64, y: f64 },

    /// The closed-form law of (S_n, T_n) only exists for n >= 5.
    #[error("closed-form law of (S_n, T_n) requires n >= 5, got n = {0}")]
    UnsupportedOrder(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A truncated integral cannot be made accurate to the requested tolerance.
    #[error("truncation cannot meet tolerance {tol:e}: {reason}")]
    Truncation { tol: f64, reason: String },

    /// The estimated partition function left [1, e^{n/2}]; always an implementation bug.
    #[error("log Z_{n} = {log_z} violates the bound [0, {upper}]")]
    BoundViolation { n: usize, log_z: f64, upper: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
