//! Builtin reference curves with closed-form derivatives and known invariants.
//!
//! These four curves anchor the regression suite and are addressable from the
//! CLI via `--builtin <name>`. Two of them (`mannheim_ex48`, `bertrand_ex510`)
//! are themselves exact integral curves of direction fields along
//! `helix_ex39`, so they double as oracles for the tracer: the tracer must
//! reproduce them to within its own step error.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::curve::{ParamCurve, Vec3};
use crate::error::{Error, Result};

/// Names accepted by [`fixture`], in the order they are documented.
pub const FIXTURE_NAMES: [&str; 4] = ["helix_ex39", "mannheim_ex48", "bertrand_ex510", "slant_ex511"];

/// Domain used when the caller does not override it.
pub fn default_domain() -> (f64, f64) {
    (0.0, 4.0 * PI)
}

/// Known invariants of a builtin curve, used as test oracles.
#[derive(Debug, Clone, Copy)]
pub struct Expected {
    /// Classification label the pipeline must produce.
    pub label: &'static str,
    /// Constant curvature, when the curve has one (unit-speed convention).
    pub kappa: Option<f64>,
    /// Constant torsion, when the curve has one.
    pub tau: Option<f64>,
    /// Constant |sigma| of the slant-helix invariant, when defined.
    pub sigma_abs: Option<f64>,
    /// Tangent angle of the constant-angle construction this curve realizes.
    pub theta: Option<f64>,
    /// Builtin the curve is an integral direction curve of, if any.
    pub donor: Option<&'static str>,
}

/// A builtin curve plus its known invariants.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub curve: ParamCurve,
    pub expected: Expected,
    /// Human-oriented statement of what the curve is.
    pub notes: &'static str,
}

/// Look up a builtin curve on the default domain.
pub fn fixture(name: &str) -> Result<Fixture> {
    fixture_on(name, default_domain())
}

/// Look up a builtin curve on a caller-chosen parameter interval.
pub fn fixture_on(name: &str, domain: (f64, f64)) -> Result<Fixture> {
    match name {
        "helix_ex39" => Ok(Fixture {
            name: "helix_ex39",
            curve: helix_curve(domain),
            expected: Expected {
                label: "helix",
                kappa: Some(0.5),
                tau: Some(0.5),
                sigma_abs: Some(0.0),
                theta: None,
                donor: None,
            },
            notes: "Unit-speed circular helix (cos(s/r2), sin(s/r2), s/r2), r2 = sqrt(2); \
                    kappa = tau = 1/2, principal normal (-cos(s/r2), -sin(s/r2), 0).",
        }),
        "mannheim_ex48" => Ok(Fixture {
            name: "mannheim_ex48",
            curve: mannheim_trace_curve(domain),
            expected: Expected {
                label: "slant_helix",
                kappa: None,
                tau: None,
                sigma_abs: Some(1.0),
                theta: None,
                donor: Some("helix_ex39"),
            },
            notes: "Exact integral curve, from the origin, of the tangent-normal field \
                    sin(s/2) T + cos(s/2) N along helix_ex39; a slant helix with |sigma| = 1, \
                    kappa = |cos(s/2)|/2, tau = sin(s/2)/2.",
        }),
        "bertrand_ex510" => Ok(Fixture {
            name: "bertrand_ex510",
            curve: bertrand_trace_curve(domain),
            expected: Expected {
                label: "helix",
                kappa: Some((3.0_f64.sqrt() - 1.0) / 4.0),
                tau: Some((3.0_f64.sqrt() + 1.0) / 4.0),
                sigma_abs: Some(0.0),
                theta: Some(PI / 3.0),
                donor: Some("helix_ex39"),
            },
            notes: "Exact integral curve, from the origin, of the constant-angle field \
                    cos(pi/3) T + sin(pi/3) B along helix_ex39; a circular helix with \
                    kappa = (sqrt(3)-1)/4 and tau = (sqrt(3)+1)/4.",
        }),
        "slant_ex511" => Ok(Fixture {
            name: "slant_ex511",
            curve: slant_curve(domain),
            expected: Expected {
                label: "slant_helix",
                kappa: Some(1.0),
                tau: None,
                sigma_abs: Some(1.0 / 9.0),
                theta: None,
                donor: None,
            },
            notes: "Slant helix built from three incommensurate harmonics; not unit speed \
                    (speed (9/sqrt(82)) cos(s/sqrt(82))), unit-speed curvature identically 1, \
                    torsion -tan(s/sqrt(82)), sigma = -1/9. Regular for |s| < 41 pi / sqrt(82).",
        }),
        other => Err(Error::UnknownFixture {
            name: other.to_string(),
            expected: FIXTURE_NAMES.join(", "),
        }),
    }
}

fn helix_curve(domain: (f64, f64)) -> ParamCurve {
    ParamCurve::new(domain, |s| {
        let u = s / SQRT_2;
        Vec3::new(u.cos(), u.sin(), u)
    })
    .with_derivatives(|s, order| {
        let u = s / SQRT_2;
        match order {
            1 => Vec3::new(-u.sin() / SQRT_2, u.cos() / SQRT_2, 1.0 / SQRT_2),
            2 => Vec3::new(-u.cos() / 2.0, -u.sin() / 2.0, 0.0),
            _ => Vec3::new(u.sin() / (2.0 * SQRT_2), -u.cos() / (2.0 * SQRT_2), 0.0),
        }
    })
}

/// Antiderivative of sin(s/2) T(s) + cos(s/2) N(s) over the helix frame,
/// shifted to start at the origin. Successive derivatives follow from the
/// frame equations: beta'' = (cos(s/2)/2) B and B' = (1/2)(cos u, sin u, 0).
fn mannheim_trace_curve(domain: (f64, f64)) -> ParamCurve {
    let b_vec = |u: f64| Vec3::new(u.sin() / SQRT_2, -u.cos() / SQRT_2, 1.0 / SQRT_2);
    ParamCurve::new(domain, |s| {
        let (p, u) = (s / 2.0, s / SQRT_2);
        Vec3::new(
            4.0 * p.sin() * u.cos() - 3.0 * SQRT_2 * u.sin() * p.cos(),
            4.0 * p.sin() * u.sin() + 3.0 * SQRT_2 * p.cos() * u.cos() - 3.0 * SQRT_2,
            SQRT_2 * (1.0 - p.cos()),
        )
    })
    .with_derivatives(move |s, order| {
        let (p, u) = (s / 2.0, s / SQRT_2);
        match order {
            1 => Vec3::new(
                -p.sin() * u.sin() / SQRT_2 - p.cos() * u.cos(),
                p.sin() * u.cos() / SQRT_2 - p.cos() * u.sin(),
                p.sin() / SQRT_2,
            ),
            2 => (p.cos() / 2.0) * b_vec(u),
            _ => (-p.sin() / 4.0) * b_vec(u) + (p.cos() / 2.0) * Vec3::new(u.cos() / 2.0, u.sin() / 2.0, 0.0),
        }
    })
}

/// Antiderivative of cos(pi/3) T(s) + sin(pi/3) B(s) over the helix frame,
/// shifted to start at the origin.
fn bertrand_trace_curve(domain: (f64, f64)) -> ParamCurve {
    let k1 = (1.0 - 3.0_f64.sqrt()) / 2.0;
    let k3 = (1.0 + 3.0_f64.sqrt()) / (2.0 * SQRT_2);
    ParamCurve::new(domain, move |s| {
        let u = s / SQRT_2;
        Vec3::new(k1 * (u.cos() - 1.0), k1 * u.sin(), k3 * s)
    })
    .with_derivatives(move |s, order| {
        let u = s / SQRT_2;
        match order {
            1 => Vec3::new(-k1 * u.sin() / SQRT_2, k1 * u.cos() / SQRT_2, k3),
            2 => Vec3::new(-k1 * u.cos() / 2.0, -k1 * u.sin() / 2.0, 0.0),
            _ => Vec3::new(k1 * u.sin() / (2.0 * SQRT_2), -k1 * u.cos() / (2.0 * SQRT_2), 0.0),
        }
    })
}

/// One sinusoidal term `amp * cos(omega * s + phase)`; differentiating shifts
/// the phase by a quarter turn and scales by omega.
#[derive(Clone, Copy)]
struct Wave {
    amp: f64,
    omega: f64,
    phase: f64,
}

fn wave_sum(waves: &[Wave], s: f64, order: usize) -> f64 {
    waves
        .iter()
        .map(|w| w.amp * w.omega.powi(order as i32) * (w.omega * s + w.phase + order as f64 * FRAC_PI_2).cos())
        .sum()
}

fn slant_curve(domain: (f64, f64)) -> ParamCurve {
    let r82 = 82.0_f64.sqrt();
    let pre = 9.0 / r82;
    let a = (r82 - 82.0) / (8.0 * (41.0 + r82));
    let b = (r82 + 82.0) / (8.0 * (r82 - 41.0));
    let f = r82 / 41.0;
    let (wp, wm) = (1.0 + f, 1.0 - f);
    let sin = -FRAC_PI_2;

    let x: Vec<Wave> = vec![
        Wave { amp: pre * a, omega: wp, phase: sin },
        Wave { amp: pre * b, omega: wm, phase: sin },
        Wave { amp: -pre / 2.0, omega: 1.0, phase: sin },
    ];
    let y: Vec<Wave> = vec![
        Wave { amp: -pre * a, omega: wp, phase: 0.0 },
        Wave { amp: -pre * b, omega: wm, phase: 0.0 },
        Wave { amp: pre / 2.0, omega: 1.0, phase: 0.0 },
    ];
    let z: Vec<Wave> = vec![Wave { amp: pre * 9.0 / 4.0, omega: f, phase: 0.0 }];

    let (xp, yp, zp) = (x.clone(), y.clone(), z.clone());
    ParamCurve::new(domain, move |s| {
        Vec3::new(wave_sum(&xp, s, 0), wave_sum(&yp, s, 0), wave_sum(&zp, s, 0))
    })
    .with_derivatives(move |s, order| {
        Vec3::new(wave_sum(&x, s, order), wave_sum(&y, s, order), wave_sum(&z, s, order))
    })
}
