//! Error type shared by all numerical modules.

use thiserror::Error;

/// Any failure the numerical core can report.
///
/// Instability is a result in this library, not a panic: non-finite states and
/// non-convergent iterations surface as errors carrying the diagnostic the
/// caller needs (residuals, magnitudes, iteration counts).
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// Grid construction parameters out of range.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A field's length does not match its grid, or two fields disagree.
    #[error("shape mismatch: expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// NaN or infinity encountered where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Derivative order other than 1, 2, or 4.
    #[error("unsupported derivative order {0} (supported: 1, 2, 4)")]
    UnsupportedOrder(u32),

    /// Kernel spacing does not match the grid spacing along the axis.
    #[error("kernel spacing {kernel} does not match axis spacing {axis}")]
    SpacingMismatch { kernel: f64, axis: f64 },

    /// Axis too short for the requested boundary extension.
    #[error("axis of {got} points is too short: {need}")]
    AxisTooShort { need: String, got: usize },

    /// A prescription was asked to evaluate without its required gradient.
    #[error("missing gradient input: {0}")]
    MissingGradient(&'static str),

    /// Coefficient violates its sign or range constraint.
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),

    /// Implicit fixed-point iteration failed to reach tolerance.
    #[error("fixed-point iteration stalled after {iterations} iterations (residual {residual:.3e})")]
    FixedPointDiverged { residual: f64, iterations: usize },

    /// A time-integrator stage produced NaN/Inf; `max_abs` is the largest
    /// finite magnitude in the offending state.
    #[error("non-finite integrator stage ({context}, max finite |u| = {max_abs:.3e})")]
    NonFiniteStage { context: &'static str, max_abs: f64 },

    /// Periodic Poisson problem with an incompatible (non-zero-mean) source.
    #[error("periodic Poisson source has non-zero mean {mean:.3e}")]
    NonZeroMean { mean: f64 },

    /// Series evaluation did not converge at the requested tolerance.
    #[error("series did not converge within {terms} terms at tolerance {tol:.3e}")]
    SeriesDiverged { terms: usize, tol: f64 },

    /// Anything else rejected up front.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
