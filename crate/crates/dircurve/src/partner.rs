//! Integral curves of direction fields, and the curvature and frame
//! bookkeeping between a donor curve and its constructed partner.
//!
//! [`trace_direction_curve`] integrates `beta'(s) = X(s)` with classical RK4
//! on the donor lattice. Because `X` depends only on arc length, one step is
//! a Simpson rule over `[s, s+h]` with the half-step value of `X` coming from
//! the field's interpolating evaluator.
//!
//! The *_residuals functions compare what the trace measures against what the
//! transfer formulas predict. A measured Frenet frame always reports
//! `kappa >= 0`, so wherever the partner's curvature crosses zero its normal
//! and binormal reverse while the tangent does not. All comparisons therefore
//! resolve one sign per connected stretch of well-conditioned samples and
//! report residuals after that resolution.

use serde::Serialize;

use crate::config::Tolerances;
use crate::curve::Vec3;
use crate::error::{Error, Result};
use crate::field::{DirectionField, FieldKind};
use crate::frenet::{table_from_grid_points, FrenetTable};
use crate::numeric::{median, CompensatedSum};

/// How a sampled curve came to exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Input,
    EvoluteDirection,
    MannheimDirection,
    BertrandDirection,
    CustomDirection,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Input => "input",
            Provenance::EvoluteDirection => "evolute_direction",
            Provenance::MannheimDirection => "mannheim_direction",
            Provenance::BertrandDirection => "bertrand_direction",
            Provenance::CustomDirection => "custom_direction",
        }
    }

    pub fn of_field(kind: FieldKind) -> Self {
        match kind {
            FieldKind::Evolute => Provenance::EvoluteDirection,
            FieldKind::Mannheim => Provenance::MannheimDirection,
            FieldKind::Bertrand => Provenance::BertrandDirection,
            FieldKind::Custom => Provenance::CustomDirection,
        }
    }
}

/// A constructed curve as ordered samples on the donor's arc-length lattice.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    provenance: Provenance,
    s0: f64,
    spacing: f64,
    points: Vec<Vec3>,
}

impl CurveTrace {
    /// Wrap externally produced samples (used for curves read back from disk
    /// and for donors exported through the same code path).
    pub fn from_samples(provenance: Provenance, s0: f64, spacing: f64, points: Vec<Vec3>) -> Self {
        Self { provenance, s0, spacing, points }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn s_start(&self) -> f64 {
        self.s0
    }

    pub fn s_at(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.spacing
    }

    /// Frenet data measured from the traced samples themselves.
    pub fn frenet_table(&self, cfg: &Tolerances) -> Result<FrenetTable> {
        table_from_grid_points(self.s0, self.spacing, &self.points, cfg)
    }
}

/// Integrate `beta' = X` from `start` across the donor lattice. The step is
/// the lattice spacing; each increment is checked against the unit-speed
/// property (chord length equals step length to `cfg.chord_rel_tol`).
pub fn trace_direction_curve(
    donor: &FrenetTable,
    field: &DirectionField,
    start: Vec3,
    cfg: &Tolerances,
) -> Result<CurveTrace> {
    if !donor.is_gap_free() {
        return Err(Error::GapInInterval { gaps: donor.gaps().len() });
    }
    let n = donor.lattice_len();
    let h = donor.spacing();
    let s0 = donor.s_start();

    let mut points = Vec::with_capacity(n);
    points.push(start);
    let mut acc = [CompensatedSum::default(); 3];
    let mut k1 = field.evaluate(s0)?;
    for i in 0..n - 1 {
        let s = s0 + i as f64 * h;
        let mid = field.evaluate(s + 0.5 * h)?;
        let k4 = field.evaluate(s + h)?;
        let delta = (h / 6.0) * (k1 + 4.0 * mid + k4);
        let rel = (delta.norm() - h).abs() / h;
        if rel > cfg.chord_rel_tol {
            return Err(Error::TraceInconsistent { s, rel });
        }
        for (a, acc_a) in acc.iter_mut().enumerate() {
            acc_a.add(delta[a]);
        }
        points.push(start + Vec3::new(acc[0].value(), acc[1].value(), acc[2].value()));
        k1 = k4;
    }

    Ok(CurveTrace {
        provenance: Provenance::of_field(field.kind()),
        s0,
        spacing: h,
        points,
    })
}

/// Curvature and torsion of one curve at one sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvaturePair {
    pub kappa: f64,
    pub tau: f64,
}

/// Partner curvatures predicted from donor data.
///
/// `phase_or_theta` is the cumulative quadrature phase for evolute and
/// mannheim kinds, and the constant tangent angle for bertrand.
///
/// # Panics
/// On [`FieldKind::Custom`], which has no closed-form transfer.
pub fn predicted_partner_curvatures(kind: FieldKind, kappa: f64, tau: f64, phase_or_theta: f64) -> CurvaturePair {
    let p = phase_or_theta;
    match kind {
        FieldKind::Evolute => CurvaturePair { kappa: kappa * p.sin().abs(), tau: kappa * p.cos() },
        FieldKind::Mannheim => CurvaturePair { kappa: (tau * p.cos()).abs(), tau: tau * p.sin() },
        FieldKind::Bertrand => CurvaturePair {
            kappa: (kappa * p.cos() - tau * p.sin()).abs(),
            tau: kappa * p.sin() + tau * p.cos(),
        },
        FieldKind::Custom => panic!("no closed-form curvature transfer for custom fields"),
    }
}

/// Donor curvatures recovered from partner data.
///
/// `ratio_derivative` is the arc-length derivative of `tau/kappa` on the
/// partner (used by evolute and mannheim kinds); `theta` is the constant
/// angle (bertrand kind). The mannheim inversion determines the donor torsion
/// only up to sign, so `tau` carries its magnitude for that kind.
///
/// # Panics
/// On [`FieldKind::Custom`].
pub fn recover_donor_curvatures(
    kind: FieldKind,
    partner: CurvaturePair,
    ratio_derivative: f64,
    theta: f64,
    cfg: &Tolerances,
) -> Result<CurvaturePair> {
    if partner.kappa <= cfg.kappa_min {
        return Err(Error::ZeroPartnerCurvature { kappa: partner.kappa });
    }
    let sq = partner.kappa * partner.kappa + partner.tau * partner.tau;
    Ok(match kind {
        FieldKind::Evolute => CurvaturePair {
            kappa: sq.sqrt(),
            tau: partner.kappa * partner.kappa / sq * ratio_derivative,
        },
        FieldKind::Mannheim => CurvaturePair {
            kappa: (partner.kappa * partner.kappa / sq * ratio_derivative).abs(),
            tau: sq.sqrt(),
        },
        FieldKind::Bertrand => CurvaturePair {
            kappa: (partner.kappa * theta.cos() + partner.tau * theta.sin()).abs(),
            tau: partner.tau * theta.cos() - partner.kappa * theta.sin(),
        },
        FieldKind::Custom => panic!("no closed-form curvature transfer for custom fields"),
    })
}

/// Max/median/count summary of a residual series.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResidualStats {
    pub max: f64,
    pub median: f64,
    pub count: usize,
}

impl ResidualStats {
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self { max: 0.0, median: 0.0, count: 0 };
        }
        Self {
            max: values.iter().copied().fold(0.0, f64::max),
            median: median(values),
            count: values.len(),
        }
    }
}

/// Residuals between measured and predicted partner curvatures.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransferReport {
    pub kappa: ResidualStats,
    pub tau: ResidualStats,
}

/// Matched, well-conditioned `(lattice index, donor sample, partner sample)`
/// triples shared by the residual routines.
pub(crate) fn matched_well_conditioned(
    donor: &FrenetTable,
    partner: &FrenetTable,
    cfg: &Tolerances,
) -> Result<Vec<(usize, usize, usize)>> {
    let matched = donor.matched_with(partner)?;
    let dmask = donor.well_conditioned_mask(cfg);
    let pmask = partner.well_conditioned_mask(cfg);
    Ok(matched.into_iter().filter(|&(_, j, k)| dmask[j] && pmask[k]).collect())
}

/// Split matched triples into stretches of consecutive lattice indices. The
/// lattice jumps exactly where masked samples were dropped, i.e. around
/// partner-curvature zeros and table gaps, which is where frame signs may
/// legitimately reverse.
pub(crate) fn components(matched: &[(usize, usize, usize)]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for idx in 1..=matched.len() {
        let broken = idx == matched.len() || matched[idx].0 != matched[idx - 1].0 + 1;
        if broken {
            if idx > start {
                out.push(start..idx);
            }
            start = idx;
        }
    }
    out
}

fn phase_or_theta_at(field: &DirectionField, lattice_index: usize) -> Result<f64> {
    match field.kind() {
        FieldKind::Evolute | FieldKind::Mannheim => field
            .phase_at(lattice_index)
            .ok_or_else(|| Error::GridMismatch { detail: "field has no phase at matched lattice point".into() }),
        FieldKind::Bertrand => Ok(field.theta().expect("bertrand fields always carry theta")),
        FieldKind::Custom => Err(Error::KindMismatch { requested: "evolute|mannheim|bertrand", actual: "custom" }),
    }
}

/// Compare the partner table's measured curvatures against the closed-form
/// transfer of the donor's, sample by sample. Signs need no resolution here:
/// the measured torsion is invariant under the frame reversals that occur at
/// curvature zeros, and measured curvature is nonnegative like the predicted
/// one.
pub fn transfer_residuals(
    donor: &FrenetTable,
    field: &DirectionField,
    partner: &FrenetTable,
    cfg: &Tolerances,
) -> Result<TransferReport> {
    let matched = matched_well_conditioned(donor, partner, cfg)?;
    let mut dk = Vec::with_capacity(matched.len());
    let mut dt = Vec::with_capacity(matched.len());
    for (i, j, k) in matched {
        let d = &donor.samples()[j];
        let p = &partner.samples()[k];
        let pred = predicted_partner_curvatures(field.kind(), d.kappa, d.tau, phase_or_theta_at(field, i)?);
        dk.push((p.kappa - pred.kappa).abs());
        dt.push((p.tau - pred.tau).abs());
    }
    Ok(TransferReport {
        kappa: ResidualStats::from_values(&dk),
        tau: ResidualStats::from_values(&dt),
    })
}

/// Residuals of the frame relations between donor and partner.
#[derive(Debug, Clone, Serialize)]
pub struct FrameRelationReport {
    /// `|T_partner - X|` (the partner tangent must be the field itself).
    pub tangent: ResidualStats,
    /// Kind-specific normal relation, after per-component sign resolution.
    pub normal: Option<ResidualStats>,
    /// Kind-specific binormal relation, same resolved sign as the normal.
    pub binormal: Option<ResidualStats>,
    /// `|<X, T_donor> - cos(theta)|` for constant-angle fields.
    pub tangent_angle: Option<ResidualStats>,
    /// Number of sign-resolved stretches.
    pub components: usize,
}

/// Check the frame relations on a traced partner:
///
/// ```text
/// evolute:   N_p = T,   B_p =  cos(phi) N - sin(phi) B
/// mannheim:  N_p = B,   B_p =  cos(phi) T - sin(phi) N
/// bertrand:  N_p = N,   B_p = -sin(theta) T + cos(theta) B
/// ```
///
/// plus `T_p = X` for every kind. Custom fields check only the tangent.
pub fn frame_relation_residuals(
    donor: &FrenetTable,
    field: &DirectionField,
    partner: &FrenetTable,
    cfg: &Tolerances,
) -> Result<FrameRelationReport> {
    let matched = matched_well_conditioned(donor, partner, cfg)?;
    let comps = components(&matched);

    let field_vector = |i: usize, j: usize| -> Vec3 {
        let d = &donor.samples()[j];
        let c = field.coeff_at(i).expect("retained matched sample has coefficients");
        (c[0] * d.tangent + c[1] * d.normal + c[2] * d.binormal).normalize()
    };

    let mut tangent = Vec::with_capacity(matched.len());
    for &(i, j, k) in &matched {
        tangent.push((partner.samples()[k].tangent - field_vector(i, j)).norm());
    }

    if field.kind() == FieldKind::Custom {
        return Ok(FrameRelationReport {
            tangent: ResidualStats::from_values(&tangent),
            normal: None,
            binormal: None,
            tangent_angle: None,
            components: comps.len(),
        });
    }

    let targets = |i: usize, j: usize| -> Result<(Vec3, Vec3)> {
        let d = &donor.samples()[j];
        Ok(match field.kind() {
            FieldKind::Evolute => {
                let phi = phase_or_theta_at(field, i)?;
                (d.tangent, phi.cos() * d.normal - phi.sin() * d.binormal)
            }
            FieldKind::Mannheim => {
                let phi = phase_or_theta_at(field, i)?;
                (d.binormal, phi.cos() * d.tangent - phi.sin() * d.normal)
            }
            FieldKind::Bertrand => {
                let th = field.theta().expect("bertrand fields always carry theta");
                (d.normal, -th.sin() * d.tangent + th.cos() * d.binormal)
            }
            FieldKind::Custom => unreachable!("handled above"),
        })
    };

    let mut normal = Vec::with_capacity(matched.len());
    let mut binormal = Vec::with_capacity(matched.len());
    for comp in &comps {
        // One sign for the whole stretch, chosen to minimize the worst
        // normal/binormal residual over it.
        let mut best = (f64::INFINITY, 1.0);
        for sign in [1.0, -1.0] {
            let mut worst: f64 = 0.0;
            for &(i, j, k) in &matched[comp.clone()] {
                let p = &partner.samples()[k];
                let (nt, bt) = targets(i, j)?;
                worst = worst
                    .max((sign * p.normal - nt).norm())
                    .max((sign * p.binormal - bt).norm());
            }
            if worst < best.0 {
                best = (worst, sign);
            }
        }
        let sign = best.1;
        for &(i, j, k) in &matched[comp.clone()] {
            let p = &partner.samples()[k];
            let (nt, bt) = targets(i, j)?;
            normal.push((sign * p.normal - nt).norm());
            binormal.push((sign * p.binormal - bt).norm());
        }
    }

    let tangent_angle = if field.kind() == FieldKind::Bertrand {
        let th = field.theta().expect("bertrand fields always carry theta");
        let vals: Vec<f64> = matched
            .iter()
            .map(|&(i, j, _)| (field_vector(i, j).dot(&donor.samples()[j].tangent) - th.cos()).abs())
            .collect();
        Some(ResidualStats::from_values(&vals))
    } else {
        None
    };

    Ok(FrameRelationReport {
        tangent: ResidualStats::from_values(&tangent),
        normal: Some(ResidualStats::from_values(&normal)),
        binormal: Some(ResidualStats::from_values(&binormal)),
        tangent_angle,
        components: comps.len(),
    })
}

/// Push the measured partner curvatures back through the inverse transfer and
/// compare with the donor's own curvatures. The donor curvature must match in
/// value; torsion is compared in magnitude because two of the three printed
/// inversions determine it only up to sign. For the constant-angle kind the
/// inversion formula is branch-dependent, so both `theta` and `-theta` are
/// tried and the better branch kept per sample.
pub fn round_trip_residuals(
    donor: &FrenetTable,
    field: &DirectionField,
    partner: &FrenetTable,
    cfg: &Tolerances,
) -> Result<TransferReport> {
    let matched = matched_well_conditioned(donor, partner, cfg)?;
    let ratio_deriv = partner.ratio_derivative_values(cfg);
    let mut dk = Vec::with_capacity(matched.len());
    let mut dt = Vec::with_capacity(matched.len());
    for (_, j, k) in matched {
        let d = &donor.samples()[j];
        let p = &partner.samples()[k];
        let pair = CurvaturePair { kappa: p.kappa, tau: p.tau };
        let rec = match field.kind() {
            FieldKind::Bertrand => {
                let th = field.theta().expect("bertrand fields always carry theta");
                let a = recover_donor_curvatures(FieldKind::Bertrand, pair, 0.0, th, cfg)?;
                let b = recover_donor_curvatures(FieldKind::Bertrand, pair, 0.0, -th, cfg)?;
                let res = |c: CurvaturePair| (c.kappa - d.kappa).abs() + (c.tau.abs() - d.tau.abs()).abs();
                if res(a) <= res(b) {
                    a
                } else {
                    b
                }
            }
            kind => recover_donor_curvatures(kind, pair, ratio_deriv[k], 0.0, cfg)?,
        };
        dk.push((rec.kappa - d.kappa).abs());
        dt.push((rec.tau.abs() - d.tau.abs()).abs());
    }
    Ok(TransferReport {
        kappa: ResidualStats::from_values(&dk),
        tau: ResidualStats::from_values(&dt),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::frenet::frenet_apparatus;
    use crate::curve::ParamCurve;
    use approx::assert_relative_eq;
    use std::f64::consts::{PI, SQRT_2};

    fn helix_table(n: usize) -> FrenetTable {
        let cfg = Tolerances::default();
        let curve = fixtures::fixture("helix_ex39").unwrap().curve;
        frenet_apparatus(&curve, n, &cfg).unwrap()
    }

    #[test]
    fn tangent_field_trace_translates_the_donor() {
        let cfg = Tolerances::default();
        let curve = fixtures::fixture("helix_ex39").unwrap().curve;
        let table = frenet_apparatus(&curve, 20001, &cfg).unwrap();
        let field = DirectionField::custom(&table, |_| 1.0, |_| 0.0, |_| 0.0, &cfg).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        assert_eq!(trace.provenance(), Provenance::CustomDirection);
        let p0 = curve.evaluate(0.0).unwrap();
        let mut worst: f64 = 0.0;
        for (i, pt) in trace.points().iter().enumerate().step_by(100) {
            let expect = curve.evaluate(trace.s_at(i)).unwrap() - p0;
            worst = worst.max((pt - expect).norm());
        }
        assert!(worst <= 1e-7, "translate deviation {worst}");
    }

    #[test]
    fn evolute_trace_matches_its_antiderivative() {
        let cfg = Tolerances::default();
        let table = helix_table(6284);
        let field = DirectionField::evolute(&table, 0.0).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        let closed = |s: f64| {
            let (p, u) = (s / 2.0, s / SQRT_2);
            Vec3::new(
                4.0 - 3.0 * SQRT_2 * p.sin() * u.sin() - 4.0 * p.cos() * u.cos(),
                3.0 * SQRT_2 * p.sin() * u.cos() - 4.0 * u.sin() * p.cos(),
                SQRT_2 * p.sin(),
            )
        };
        let mut worst: f64 = 0.0;
        for (i, pt) in trace.points().iter().enumerate() {
            worst = worst.max((pt - closed(trace.s_at(i))).norm());
        }
        assert!(worst <= 1e-6, "trace deviates from closed form by {worst}");
    }

    #[test]
    fn mannheim_trace_matches_the_builtin_closed_form() {
        let cfg = Tolerances::default();
        let table = helix_table(6284);
        let field = DirectionField::mannheim(&table, 0.0, &cfg).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        let oracle = fixtures::fixture("mannheim_ex48").unwrap().curve;
        let mut worst: f64 = 0.0;
        for (i, pt) in trace.points().iter().enumerate() {
            worst = worst.max((pt - oracle.evaluate(trace.s_at(i)).unwrap()).norm());
        }
        assert!(worst <= 1e-6, "trace deviates from closed form by {worst}");
    }

    #[test]
    fn bertrand_trace_matches_the_builtin_closed_form() {
        let cfg = Tolerances::default();
        let table = helix_table(6284);
        let field = DirectionField::bertrand(&table, PI / 3.0, &cfg).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        assert_eq!(trace.provenance(), Provenance::BertrandDirection);
        let oracle = fixtures::fixture("bertrand_ex510").unwrap().curve;
        let mut worst: f64 = 0.0;
        for (i, pt) in trace.points().iter().enumerate() {
            worst = worst.max((pt - oracle.evaluate(trace.s_at(i)).unwrap()).norm());
        }
        assert!(worst <= 1e-6, "trace deviates from closed form by {worst}");
    }

    #[test]
    fn bertrand_trace_measures_the_predicted_constant_curvatures() {
        let cfg = Tolerances::default();
        let table = helix_table(4096);
        let field = DirectionField::bertrand(&table, PI / 3.0, &cfg).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        let ptable = trace.frenet_table(&cfg).unwrap();
        let expect_k = (3.0_f64.sqrt() - 1.0) / 4.0;
        let expect_t = (3.0_f64.sqrt() + 1.0) / 4.0;
        for x in ptable.samples().iter().step_by(64) {
            assert_relative_eq!(x.kappa, expect_k, epsilon = 5e-4);
            assert_relative_eq!(x.tau, expect_t, epsilon = 5e-4);
        }
        let report = transfer_residuals(&table, &field, &ptable, &cfg).unwrap();
        assert!(report.kappa.count > 3000);
        assert!(report.kappa.max <= 5e-4, "kappa transfer residual {}", report.kappa.max);
        assert!(report.tau.max <= 5e-4, "tau transfer residual {}", report.tau.max);
    }

    #[test]
    fn evolute_frame_relations_hold_after_sign_resolution() {
        let cfg = Tolerances::default();
        let table = helix_table(4096);
        let field = DirectionField::evolute(&table, 0.0).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        let ptable = trace.frenet_table(&cfg).unwrap();

        let report = frame_relation_residuals(&table, &field, &ptable, &cfg).unwrap();
        // Partner curvature vanishes at s = 2pi, so the span splits there and
        // the two stretches carry opposite normal signs.
        assert_eq!(report.components, 2, "expected a split at the curvature zero");
        assert!(report.tangent.max <= 1e-4, "tangent residual {}", report.tangent.max);
        assert!(report.normal.unwrap().max <= 1e-4);
        assert!(report.binormal.unwrap().max <= 1e-4);

        // Without sign resolution one of the stretches would sit at distance
        // ~2 from the target; prove the data really does flip.
        let matched = matched_well_conditioned(&table, &ptable, &cfg).unwrap();
        let mid = matched.len() / 2;
        let first = &matched[..mid];
        let probe = |set: &[(usize, usize, usize)]| -> f64 {
            let (_, j, k) = set[set.len() / 2];
            ptable.samples()[k].normal.dot(&table.samples()[j].tangent)
        };
        let a = probe(first);
        let b = probe(&matched[mid..]);
        assert!(a * b < 0.0, "normal did not flip across the curvature zero: {a} vs {b}");
    }

    #[test]
    fn transfer_residuals_on_the_evolute_pair_stay_small() {
        let cfg = Tolerances::default();
        let table = helix_table(4096);
        let field = DirectionField::evolute(&table, 0.0).unwrap();
        let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
        let ptable = trace.frenet_table(&cfg).unwrap();
        let report = transfer_residuals(&table, &field, &ptable, &cfg).unwrap();
        assert!(report.kappa.count > 2000);
        assert!(report.kappa.max <= 5e-4, "kappa residual {}", report.kappa.max);
        assert!(report.tau.max <= 5e-4, "tau residual {}", report.tau.max);
    }

    #[test]
    fn predicted_values_match_hand_computations() {
        // Constant-angle transfer at theta = pi/3 on kappa = tau = 1/2.
        let p = predicted_partner_curvatures(FieldKind::Bertrand, 0.5, 0.5, PI / 3.0);
        assert_relative_eq!(p.kappa, (3.0_f64.sqrt() - 1.0) / 4.0, epsilon = 1e-15);
        assert_relative_eq!(p.tau, (3.0_f64.sqrt() + 1.0) / 4.0, epsilon = 1e-15);

        // Quadrature phase pi/2 puts all curvature into the partner.
        let p = predicted_partner_curvatures(FieldKind::Evolute, 0.7, 0.3, PI / 2.0);
        assert_relative_eq!(p.kappa, 0.7);
        assert!(p.tau.abs() < 1e-16);

        // Zero phase leaves the mannheim partner with |tau| and no torsion.
        let p = predicted_partner_curvatures(FieldKind::Mannheim, 0.5, 0.5, 0.0);
        assert_relative_eq!(p.kappa, 0.5);
        assert_eq!(p.tau, 0.0);
    }

    #[test]
    fn recovery_inverts_the_transfer() {
        let cfg = Tolerances::default();

        // Evolute pair on kappa = tau = 1/2 at phase s/2: the partner ratio is
        // cot(s/2), whose derivative is -csc^2(s/2)/2.
        for s in [1.0, 2.0, 4.0] {
            let phi = s / 2.0;
            let fwd = predicted_partner_curvatures(FieldKind::Evolute, 0.5, 0.5, phi);
            let ratio_deriv = -0.5 / (phi.sin() * phi.sin());
            let rec = recover_donor_curvatures(FieldKind::Evolute, fwd, ratio_deriv, 0.0, &cfg).unwrap();
            assert_relative_eq!(rec.kappa, 0.5, epsilon = 1e-12);
            assert_relative_eq!(rec.tau.abs(), 0.5, epsilon = 1e-12);
        }

        // Mannheim pair, ratio tan(s/2), derivative sec^2(s/2)/2.
        for s in [1.0, 2.0, 2.5] {
            let phi = s / 2.0;
            let fwd = predicted_partner_curvatures(FieldKind::Mannheim, 0.5, 0.5, phi);
            let ratio_deriv = 0.5 / (phi.cos() * phi.cos());
            let rec = recover_donor_curvatures(FieldKind::Mannheim, fwd, ratio_deriv, 0.0, &cfg).unwrap();
            assert_relative_eq!(rec.kappa, 0.5, epsilon = 1e-12);
            assert_relative_eq!(rec.tau, 0.5, epsilon = 1e-12);
        }

        // The constant-angle inversion is exact only on the branch where the
        // partner curvature formula is positive before the absolute value;
        // kappa = tau = 1/2 with theta = pi/3 sits on the other branch, where
        // the same formulas with -theta invert exactly.
        let fwd = predicted_partner_curvatures(FieldKind::Bertrand, 0.5, 0.5, PI / 3.0);
        let wrong = recover_donor_curvatures(FieldKind::Bertrand, fwd, 0.0, PI / 3.0, &cfg).unwrap();
        assert!((wrong.kappa - 0.5).abs() > 0.1, "same-branch inversion should not apply here");
        let rec = recover_donor_curvatures(FieldKind::Bertrand, fwd, 0.0, -PI / 3.0, &cfg).unwrap();
        assert_relative_eq!(rec.kappa, 0.5, epsilon = 1e-15);
        assert_relative_eq!(rec.tau, 0.5, epsilon = 1e-15);

        // Positive branch: theta = -pi/4 keeps kappa cos - tau sin > 0.
        let fwd = predicted_partner_curvatures(FieldKind::Bertrand, 0.5, 0.5, -PI / 4.0);
        let rec = recover_donor_curvatures(FieldKind::Bertrand, fwd, 0.0, -PI / 4.0, &cfg).unwrap();
        assert_relative_eq!(rec.kappa, 0.5, epsilon = 1e-15);
        assert_relative_eq!(rec.tau, 0.5, epsilon = 1e-15);

        assert!(matches!(
            recover_donor_curvatures(FieldKind::Evolute, CurvaturePair { kappa: 0.0, tau: 1.0 }, 0.0, 0.0, &cfg),
            Err(Error::ZeroPartnerCurvature { .. })
        ));
    }

    #[test]
    fn round_trip_through_the_numeric_pipeline() {
        let cfg = Tolerances::default();
        let table = helix_table(4096);
        for field in [
            DirectionField::evolute(&table, 0.0).unwrap(),
            DirectionField::mannheim(&table, 0.0, &cfg).unwrap(),
            DirectionField::bertrand(&table, PI / 3.0, &cfg).unwrap(),
        ] {
            let trace = trace_direction_curve(&table, &field, Vec3::zeros(), &cfg).unwrap();
            let ptable = trace.frenet_table(&cfg).unwrap();
            let report = round_trip_residuals(&table, &field, &ptable, &cfg).unwrap();
            assert!(report.kappa.count > 1000, "kind {:?}", field.kind());
            assert!(
                report.kappa.median <= 1e-3,
                "kind {:?} kappa round-trip median {}",
                field.kind(),
                report.kappa.median
            );
            assert!(
                report.tau.median <= 1e-3,
                "kind {:?} tau round-trip median {}",
                field.kind(),
                report.tau.median
            );
        }
    }

    #[test]
    fn chord_check_trips_on_an_under_resolved_trace() {
        let cfg = Tolerances::default();
        // Tiny circle: curvature 20, so at 16 steps per revolution the chords
        // fall measurably short of the arc steps.
        let r = 0.05;
        let circle = ParamCurve::new((0.0, 2.0 * PI * r), move |s| {
            Vec3::new(r * (s / r).cos(), r * (s / r).sin(), 0.0)
        })
        .with_derivatives(move |s, k| {
            let u = s / r;
            match k {
                1 => Vec3::new(-u.sin(), u.cos(), 0.0),
                2 => Vec3::new(-u.cos() / r, -u.sin() / r, 0.0),
                _ => Vec3::new(u.sin() / (r * r), -u.cos() / (r * r), 0.0),
            }
        });
        let table = frenet_apparatus(&circle, 17, &cfg).unwrap();
        let field = DirectionField::custom(&table, |_| 1.0, |_| 0.0, |_| 0.0, &cfg).unwrap();
        assert!(matches!(
            trace_direction_curve(&table, &field, Vec3::zeros(), &cfg),
            Err(Error::TraceInconsistent { .. })
        ));
    }

    #[test]
    fn gapped_donor_tables_cannot_be_traced() {
        let cfg = Tolerances::default();
        let c = ParamCurve::new((-1.0, 1.0), |t| Vec3::new(t, t.powi(4) / 12.0, 0.0)).with_derivatives(
            |t, k| match k {
                1 => Vec3::new(1.0, t.powi(3) / 3.0, 0.0),
                2 => Vec3::new(0.0, t * t, 0.0),
                _ => Vec3::new(0.0, 2.0 * t, 0.0),
            },
        );
        let arc = c.arc_length_reparametrize(4096, &cfg).unwrap();
        let table = frenet_apparatus(&arc, 4096, &cfg).unwrap();
        assert!(!table.is_gap_free());
        let field = DirectionField::bertrand(&table, 1.0, &cfg).unwrap();
        assert!(matches!(
            trace_direction_curve(&table, &field, Vec3::zeros(), &cfg),
            Err(Error::GapInInterval { .. })
        ));
    }
}
