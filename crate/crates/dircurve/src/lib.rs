//! Frenet apparatus, direction-curve partners, and helix classification for
//! regular space curves.
//!
//! The library works on arc-length lattices. A [`curve::ParamCurve`] is
//! resampled to unit speed, a [`frenet::FrenetTable`] records the frame and
//! the curvature pair on the lattice, and a [`field::DirectionField`]
//! describes a unit vector field written in that frame. Integrating the
//! field ([`partner::trace_direction_curve`]) yields a partner curve whose
//! own Frenet data can be measured from the traced points alone and compared
//! against what the construction predicts: frame alignment, curvature and
//! torsion transfer, ratio identities, and round-trip recovery of the donor.
//! [`classify`] labels any table as plane, helix, slant helix, or generic
//! from the constancy of `tau/kappa` and of the normal-rotation invariant.

pub mod classify;
pub mod cli;
pub mod config;
pub mod curve;
pub mod error;
pub mod export;
pub mod field;
pub mod fixtures;
pub mod frenet;
pub mod numeric;
pub mod partner;
pub mod spec;

pub use config::{Tolerances, VerifyTolerances};
pub use curve::{ParamCurve, Vec3};
pub use error::{Error, Result};
pub use field::{DirectionField, FieldKind};
pub use frenet::{frenet_apparatus, FrenetSample, FrenetTable};
pub use partner::{trace_direction_curve, CurveTrace, Provenance};
