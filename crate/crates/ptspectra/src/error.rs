//! Error type shared by all solver modules.

use thiserror::Error;

/// Errors produced by the potential model, contour builder, integrators and
/// eigenvalue solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value (step size, radius, preset name) is invalid.
    #[error("configuration error: {0}")]
    Config(String),

    /// The ray integration produced a non-finite state.
    #[error("integration failed at r = {r}: state became non-finite")]
    Integration { r: f64 },

    /// A ray solution vanished at the origin, so the logarithmic derivative
    /// is a pole. The caller should perturb the energy and retry.
    #[error("pole condition: |psi(0)| = {psi_abs:.3e} on the {side} ray")]
    PoleCondition { side: &'static str, psi_abs: f64 },

    /// The secant update hit A(E1) == A(E2) exactly.
    #[error("secant stalled: identical mismatch at E1 = {e1} and E2 = {e2}")]
    StalledSecant { e1: f64, e2: f64 },

    /// Iteration limit reached; `best` carries the last iterate.
    #[error("no convergence after {iterations} iterations; best E = {best}, residual = {residual:.3e}")]
    NonConvergence {
        best: f64,
        residual: f64,
        iterations: usize,
    },

    /// Requested closed form does not exist (Z1 and Z2 are quadrature-only).
    #[error("no closed form for {0}; use quadrature")]
    UnsupportedClosedForm(String),

    /// The integrand does not decay on the requested contour.
    #[error("contour divergence: |integrand| = {magnitude:.3e} at r = {r}")]
    ContourDivergence { r: f64, magnitude: f64 },

    /// Quadrature refinement hit its limit before reaching the tolerance.
    #[error("accuracy failure: achieved error {achieved:.3e} > requested {requested:.3e}")]
    AccuracyFailure { achieved: f64, requested: f64 },

    /// An input violated a contract (e.g. a non-symmetric matrix).
    #[error("contract violation: {0}")]
    ContractViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
