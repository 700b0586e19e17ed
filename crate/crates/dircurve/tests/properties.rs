//! Randomized structural checks. Each property holds for every input in its
//! stated regime, so shrunk counterexamples point straight at a broken
//! invariant rather than a stale expectation.

use std::sync::OnceLock;

use dircurve::classify::classify_curve;
use dircurve::partner::{predicted_partner_curvatures, recover_donor_curvatures, CurvaturePair};
use dircurve::spec::{AxisCoefficients, CurveSpec, SpecKind};
use dircurve::{
    fixtures, frenet_apparatus, trace_direction_curve, DirectionField, FieldKind, FrenetTable,
    Tolerances, Vec3,
};
use proptest::prelude::*;

fn cfg() -> Tolerances {
    Tolerances::default()
}

fn slant_table() -> &'static FrenetTable {
    static TABLE: OnceLock<FrenetTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let cfg = cfg();
        let curve = fixtures::fixture("slant_ex511").unwrap().curve;
        let arc = curve.arc_length_reparametrize(512, &cfg).unwrap();
        frenet_apparatus(&arc, 512, &cfg).unwrap()
    })
}

fn helix_table() -> &'static FrenetTable {
    static TABLE: OnceLock<FrenetTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let cfg = cfg();
        let curve = fixtures::fixture("helix_ex39").unwrap().curve;
        frenet_apparatus(&curve, 512, &cfg).unwrap()
    })
}

/// Perturbed circle lifted out of the plane; curvature stays near 1 and the
/// speed near 1, so the table keeps every lattice sample.
fn wobbly_curve(xw: [f64; 4], yw: [f64; 4], zw: [f64; 6]) -> dircurve::ParamCurve {
    let x = vec![0.0, 1.0, 0.0, xw[0], xw[1], xw[2], xw[3]];
    let y = vec![0.0, 0.0, 1.0, yw[0], yw[1], yw[2], yw[3]];
    let z = vec![0.0, zw[0], zw[1], zw[2], zw[3], zw[4], zw[5]];
    let spec = CurveSpec {
        kind: SpecKind::TrigSum,
        name: None,
        coefficients: Some(AxisCoefficients { x, y, z }),
        domain: Some((0.0, 2.0 * std::f64::consts::PI)),
        n_samples: None,
        omega: Some(1.0),
    };
    spec.realize().unwrap()
}

proptest! {
    /// The closed-form transfer and its inversion cancel exactly. Torsion
    /// comes back up to sign for the quadrature kinds (their inversions see
    /// only the partner's unsigned curvature), so magnitudes are compared.
    #[test]
    fn curvature_transfer_inverts_exactly(
        kappa in 0.05..4.0f64,
        tau_mag in 0.05..2.0f64,
        tau_neg in proptest::bool::ANY,
        phase in 0.1..6.18f64,
        theta in -1.4..1.4f64,
    ) {
        let cfg = cfg();
        let tau = if tau_neg { -tau_mag } else { tau_mag };
        prop_assume!(phase.sin().abs() > 0.05 && phase.cos().abs() > 0.05);

        let pair = predicted_partner_curvatures(FieldKind::Evolute, kappa, tau, phase);
        let deriv = -tau * phase.sin().signum() / (phase.sin() * phase.sin());
        let rec = recover_donor_curvatures(FieldKind::Evolute, pair, deriv, 0.0, &cfg).unwrap();
        prop_assert!((rec.kappa - kappa).abs() < 1e-12 * kappa);
        prop_assert!((rec.tau.abs() - tau.abs()).abs() < 1e-12 * tau.abs());

        let pair = predicted_partner_curvatures(FieldKind::Mannheim, kappa, tau, phase);
        let deriv = kappa * (tau * phase.cos()).signum() / (phase.cos() * phase.cos());
        let rec = recover_donor_curvatures(FieldKind::Mannheim, pair, deriv, 0.0, &cfg).unwrap();
        prop_assert!((rec.kappa - kappa).abs() < 1e-12 * kappa);
        prop_assert!((rec.tau - tau.abs()).abs() < 1e-12 * tau.abs());

        // Clear of the ray where the partner curvature loses its sign under
        // the absolute value, the bertrand inversion is exact with sign.
        prop_assume!(kappa * theta.cos() - tau * theta.sin() > 0.05);
        let pair = predicted_partner_curvatures(FieldKind::Bertrand, kappa, tau, theta);
        let rec = recover_donor_curvatures(FieldKind::Bertrand, pair, 0.0, theta, &cfg).unwrap();
        prop_assert!((rec.kappa - kappa).abs() < 1e-12 * kappa);
        prop_assert!((rec.tau - tau).abs() < 1e-12 * tau.abs().max(kappa));
    }

    /// Partner curvature is nonnegative for every kind and parameter.
    #[test]
    fn predicted_partner_curvature_is_nonnegative(
        kappa in 0.0..4.0f64,
        tau in -2.0..2.0f64,
        p in -7.0..7.0f64,
    ) {
        for kind in [FieldKind::Evolute, FieldKind::Mannheim, FieldKind::Bertrand] {
            let CurvaturePair { kappa: pk, .. } = predicted_partner_curvatures(kind, kappa, tau, p);
            prop_assert!(pk >= 0.0, "{kind:?} predicted kappa {pk}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every direction field has unit frame coefficients and assembles the
    /// vector it claims, at every grid sample, for any phase or angle.
    #[test]
    fn direction_fields_are_unit_norm_in_the_frame(
        offset in -6.3..6.3f64,
        theta in -1.4..1.4f64,
    ) {
        let cfg = cfg();
        let table = slant_table();
        let mut fields = vec![
            DirectionField::evolute(table, offset).unwrap(),
            DirectionField::mannheim(table, offset, &cfg).unwrap(),
        ];
        if let Ok(f) = DirectionField::bertrand(table, theta, &cfg) {
            fields.push(f);
        }
        for field in &fields {
            let samples = field.grid_samples();
            prop_assert_eq!(samples.len(), table.samples().len());
            for (fs, xs) in samples.iter().zip(table.samples()) {
                let norm_sq = fs.a * fs.a + fs.b * fs.b + fs.c * fs.c;
                prop_assert!((norm_sq - 1.0).abs() < 1e-12, "{:?} |X|^2 = {norm_sq}", field.kind());
                let assembled = fs.a * xs.tangent + fs.b * xs.normal + fs.c * xs.binormal;
                prop_assert!((assembled - fs.x).norm() < 1e-12);
            }
        }
    }

    /// A constant-coefficient field moves the trace by almost exactly one
    /// lattice step per step: never more, and less only by the curvature of
    /// the rotating frame.
    #[test]
    fn traces_advance_by_one_lattice_step(
        raw in prop::array::uniform3(-1.0..1.0f64),
    ) {
        let v = Vec3::new(raw[0], raw[1], raw[2]);
        prop_assume!(v.norm() > 0.3);
        let u = v / v.norm();
        let cfg = cfg();
        let table = helix_table();
        let field =
            DirectionField::custom(table, move |_| u.x, move |_| u.y, move |_| u.z, &cfg).unwrap();
        let trace = trace_direction_curve(table, &field, Vec3::zeros(), &cfg).unwrap();
        let h = table.spacing();
        prop_assert_eq!(trace.points().len(), table.samples().len());
        for pair in trace.points().windows(2) {
            let chord = (pair[1] - pair[0]).norm();
            prop_assert!(chord <= h * (1.0 + 1e-9), "chord {chord} > step {h}");
            prop_assert!(chord >= h * (1.0 - 1e-3), "chord {chord} << step {h}");
        }
    }

    /// Classification verdicts can only relax as the constancy ceiling rises.
    #[test]
    fn classification_is_monotone_in_the_constancy_ceiling(
        lo in 1e-6..1e-1f64,
        scale in 1.0..100.0f64,
    ) {
        let table = slant_table();
        let mut tight = cfg();
        tight.constancy_tol = lo;
        let mut loose = cfg();
        loose.constancy_tol = lo * scale;
        let a = classify_curve(table, &tight).unwrap();
        let b = classify_curve(table, &loose).unwrap();
        prop_assert!(
            !a.helix.constant || b.helix.constant,
            "helix verdict regressed: {lo} -> {}", lo * scale
        );
        prop_assert!(
            !a.slant.constant || b.slant.constant,
            "slant verdict regressed: {lo} -> {}", lo * scale
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Frenet frames are orthonormal and right-handed on random space curves,
    /// and arc-length reparametrization really yields unit-speed sampling.
    #[test]
    fn frames_are_orthonormal_and_sampling_is_unit_speed(
        xw in prop::array::uniform4(-0.015..0.015f64),
        yw in prop::array::uniform4(-0.015..0.015f64),
        zw in prop::array::uniform6(-0.1..0.1f64),
    ) {
        let cfg = cfg();
        let curve = wobbly_curve(xw, yw, zw);
        let arc = curve.arc_length_reparametrize(512, &cfg).unwrap();
        let table = frenet_apparatus(&arc, 512, &cfg).unwrap();
        prop_assert!(table.is_gap_free());

        for x in table.samples() {
            for (name, v) in [("T", x.tangent), ("N", x.normal), ("B", x.binormal)] {
                prop_assert!((v.norm() - 1.0).abs() < 1e-10, "|{name}| = {}", v.norm());
            }
            prop_assert!(x.tangent.dot(&x.normal).abs() < 1e-10);
            prop_assert!(x.tangent.dot(&x.binormal).abs() < 1e-10);
            prop_assert!(x.normal.dot(&x.binormal).abs() < 1e-10);
            prop_assert!((x.tangent.cross(&x.normal) - x.binormal).norm() < 1e-9);
            prop_assert!(x.kappa > 0.0);
        }

        let h = table.spacing();
        for pair in table.samples().windows(2) {
            let chord = (pair[1].point - pair[0].point).norm();
            prop_assert!(chord <= h * (1.0 + 1e-9), "chord {chord} > step {h}");
            prop_assert!(chord >= h * (1.0 - 1e-3), "chord {chord} << step {h}");
        }
    }
}
