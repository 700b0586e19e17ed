//! Error values shared across the crate.

use thiserror::Error;

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter outside the curve's domain.
    #[error("parameter {t} outside domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    /// A finite-difference stencil would reach past the domain boundary.
    #[error("finite-difference stencil at t = {t} needs {needed} of room inside [{lo}, {hi}]")]
    StencilOutOfDomain { t: f64, needed: f64, lo: f64, hi: f64 },

    /// Speed dropped below `speed_min`; arc length is not invertible there.
    #[error("curve speed {speed:.3e} below floor at t = {t}")]
    DegenerateSpeed { t: f64, speed: f64 },

    /// Too few samples survive the curvature floor to build a usable table.
    #[error("no samples with curvature above the floor; table would be empty")]
    EmptyTable,

    /// A grid was requested with too few samples for the stencils in use.
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    /// Mannheim construction on a curve with vanishing torsion.
    #[error("mannheim field undefined: donor torsion vanishes (max |tau| = {max_abs_tau:.3e})")]
    MannheimDegenerate { max_abs_tau: f64 },

    /// Bertrand construction whose partner curvature would vanish identically.
    #[error("bertrand field degenerate at theta = {theta}: kappa*cos(theta) - tau*sin(theta) vanishes")]
    BertrandDegenerate { theta: f64 },

    /// Custom field coefficients are not unit length.
    #[error("field coefficients not unit at s = {s}: a^2+b^2+c^2 = {norm_sq}")]
    NotUnitNorm { s: f64, norm_sq: f64 },

    /// Field evaluation requested inside an excluded (low-curvature) subinterval.
    #[error("s = {s} falls in an excluded subinterval of the frame table")]
    GapSample { s: f64 },

    /// A construction needs a gap-free table but the table has exclusions.
    #[error("table has {gaps} excluded subinterval(s) inside the requested span")]
    GapInInterval { gaps: usize },

    /// Partner curvature too small for the requested inversion.
    #[error("partner curvature {kappa:.3e} below floor; inversion undefined")]
    ZeroPartnerCurvature { kappa: f64 },

    /// Identity check requested for a kind that does not match the trace's provenance.
    #[error("identity kind {requested} does not match trace provenance {actual}")]
    KindMismatch {
        requested: &'static str,
        actual: &'static str,
    },

    /// Two tables that must share a lattice do not.
    #[error("tables are not on the same arc-length lattice: {detail}")]
    GridMismatch { detail: String },

    /// Traced samples failed the equal-chord consistency check.
    #[error("trace chord deviates from step by {rel:.3e} (relative) at s = {s}")]
    TraceInconsistent { s: f64, rel: f64 },

    /// Unknown builtin curve name.
    #[error("unknown fixture '{name}' (expected one of {expected})")]
    UnknownFixture { name: String, expected: String },

    /// Curve spec file could not be parsed or fails validation.
    #[error("curve spec error: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
