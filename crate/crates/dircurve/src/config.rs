//! Numeric floors and tolerances used throughout the pipeline.
//!
//! Every threshold the library consults lives in one record so the provenance
//! of a cutoff is never a magic number buried in a computation. The defaults
//! are what the test suite pins; callers can loosen or tighten per run.

use serde::Serialize;

/// Tolerances and floors for table construction, classification, and checks.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    /// Curvature floor: samples with kappa below this are excluded from the
    /// Frenet table (the normal direction is not reliable there).
    pub kappa_min: f64,
    /// Speed floor for arc-length reparametrization; below this the length
    /// integral is not invertible.
    pub speed_min: f64,
    /// Allowed orthonormality residual when validating a constructed frame.
    pub frame_tol: f64,
    /// Relative-spread threshold for "this invariant series is constant".
    pub constancy_tol: f64,
    /// Plane test: maximum |tau| for a curve to classify as planar.
    pub plane_tol: f64,
    /// Step for pointwise finite differences on curves without closed-form
    /// derivatives (grid-based differentiation uses the grid spacing instead).
    pub fd_step: f64,
    /// Samples with kappa below this fraction of the table's median kappa are
    /// treated as near-singular when computing series statistics.
    pub singular_kappa_frac: f64,
    /// Half-width, in lattice steps, of the exclusion window around each
    /// near-singular sample or gap.
    pub singular_window: usize,
    /// Fraction of samples dropped at each end of a series before statistics.
    pub trim_fraction: f64,
    /// Unit-norm tolerance for user-supplied field coefficients.
    pub unit_coeff_tol: f64,
    /// Relative tolerance for the traced curve's equal-chord consistency check.
    pub chord_rel_tol: f64,
    /// When a series mean is below this, the constancy test falls back to an
    /// absolute deviation of the same size (so a constant-zero series passes).
    pub near_zero_mean: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kappa_min: 1e-6,
            speed_min: 1e-9,
            frame_tol: 1e-6,
            constancy_tol: 1e-3,
            plane_tol: 1e-6,
            fd_step: 1e-3,
            singular_kappa_frac: 0.05,
            singular_window: 10,
            trim_fraction: 0.05,
            unit_coeff_tol: 1e-8,
            chord_rel_tol: 1e-3,
            near_zero_mean: 1e-6,
        }
    }
}

/// Residual ceilings enforced by the `verify` command (and mirrored by the
/// acceptance tests). Frame and transfer checks are max-residual; the ratio
/// identity is judged on its median because isolated samples near curvature
/// zeros dominate the max.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyTolerances {
    /// Frame-relation residual ceiling (sign-resolved, per sample).
    pub frame: f64,
    /// Curvature-transfer residual ceiling (predicted vs measured).
    pub transfer: f64,
    /// Ratio-identity median residual ceiling.
    pub ratio_median: f64,
    /// Tangent-angle residual ceiling for constant-angle constructions.
    pub tangent_angle: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            frame: 1e-4,
            transfer: 5e-4,
            ratio_median: 1e-3,
            tangent_angle: 1e-8,
        }
    }
}
