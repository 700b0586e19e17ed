//! Curve spec files: a small JSON schema describing which curve to run the
//! pipeline on.
//!
//! ```json
//! {"kind": "builtin", "name": "helix_ex39", "n_samples": 1024}
//! {"kind": "polynomial", "coefficients": {"x": [0,1], "y": [0,0,1], "z": [0]},
//!  "domain": [-1.0, 1.0]}
//! {"kind": "trig_sum", "coefficients": {"x": [0,1,0], "y": [0,0,1], "z": [0]},
//!  "omega": 1.0, "domain": [0.0, 6.283185307179586], "n_samples": 2048}
//! ```
//!
//! Polynomial axes list `[c0, c1, c2, ...]` for `c0 + c1 t + c2 t^2 + ...`.
//! Trig-sum axes list `[a0, a1, b1, a2, b2, ...]` for
//! `a0 + sum_k (a_k cos(k w t) + b_k sin(k w t))`. Both forms carry exact
//! derivative suppliers of every order.

use std::path::Path;

use serde::Deserialize;

use crate::curve::{ParamCurve, Vec3};
use crate::error::{Error, Result};
use crate::fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecKind {
    Builtin,
    Polynomial,
    TrigSum,
}

/// Per-axis coefficient lists; an omitted axis is the zero function.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisCoefficients {
    #[serde(default)]
    pub x: Vec<f64>,
    #[serde(default)]
    pub y: Vec<f64>,
    #[serde(default)]
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub kind: SpecKind,
    /// Builtin fixture name (`kind = builtin` only).
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub coefficients: Option<AxisCoefficients>,
    /// Parameter interval `[lo, hi]`; optional for builtins.
    #[serde(default)]
    pub domain: Option<(f64, f64)>,
    #[serde(default)]
    pub n_samples: Option<usize>,
    /// Base frequency of a trig sum (default 1).
    #[serde(default)]
    pub omega: Option<f64>,
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("invalid curve spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Turn the spec into an evaluatable curve. The curve is returned in its
    /// original parameter; callers reparametrize by arc length before taking
    /// frames.
    pub fn realize(&self) -> Result<ParamCurve> {
        match self.kind {
            SpecKind::Builtin => {
                let name = self
                    .name
                    .as_deref()
                    .ok_or_else(|| Error::Spec("builtin spec needs a \"name\"".into()))?;
                if self.coefficients.is_some() || self.omega.is_some() {
                    return Err(Error::Spec("builtin spec takes no coefficients or omega".into()));
                }
                Ok(match self.domain {
                    Some(domain) => {
                        check_domain(domain)?;
                        fixtures::fixture_on(name, domain)?.curve
                    }
                    None => fixtures::fixture(name)?.curve,
                })
            }
            SpecKind::Polynomial => {
                if self.omega.is_some() {
                    return Err(Error::Spec("omega applies to trig_sum specs only".into()));
                }
                let c = self.coefficients()?.clone();
                let cd = c.clone();
                let domain = self.required_domain()?;
                Ok(
                    ParamCurve::new(domain, move |t| axis_vec(&c, |axis| poly_eval(axis, t, 0)))
                        .with_derivatives(move |t, k| axis_vec(&cd, |axis| poly_eval(axis, t, k))),
                )
            }
            SpecKind::TrigSum => {
                let omega = self.omega.unwrap_or(1.0);
                if !omega.is_finite() || omega <= 0.0 {
                    return Err(Error::Spec(format!("omega must be positive, got {omega}")));
                }
                let c = self.coefficients()?;
                for (axis, v) in [("x", &c.x), ("y", &c.y), ("z", &c.z)] {
                    if !v.is_empty() && v.len() % 2 == 0 {
                        return Err(Error::Spec(format!(
                            "trig_sum {axis} coefficients must have odd length (a0, then cos/sin pairs), got {}",
                            v.len()
                        )));
                    }
                }
                let c = c.clone();
                let cd = c.clone();
                let domain = self.required_domain()?;
                Ok(
                    ParamCurve::new(domain, move |t| axis_vec(&c, |axis| trig_eval(axis, omega, t, 0)))
                        .with_derivatives(move |t, k| {
                            axis_vec(&cd, |axis| trig_eval(axis, omega, t, k))
                        }),
                )
            }
        }
    }

    fn coefficients(&self) -> Result<&AxisCoefficients> {
        let c = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::Spec("spec needs \"coefficients\"".into()))?;
        if c.x.is_empty() && c.y.is_empty() && c.z.is_empty() {
            return Err(Error::Spec("coefficients are empty on all axes".into()));
        }
        Ok(c)
    }

    fn required_domain(&self) -> Result<(f64, f64)> {
        let domain = self.domain.ok_or_else(|| Error::Spec("spec needs a \"domain\"".into()))?;
        check_domain(domain)?;
        Ok(domain)
    }
}

fn check_domain((lo, hi): (f64, f64)) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Spec(format!("domain must be a finite interval, got [{lo}, {hi}]")));
    }
    Ok(())
}

fn axis_vec(c: &AxisCoefficients, f: impl Fn(&[f64]) -> f64) -> Vec3 {
    Vec3::new(f(&c.x), f(&c.y), f(&c.z))
}

/// `m`-th derivative of `sum_i c_i t^i` at `t`.
fn poly_eval(coeffs: &[f64], t: f64, m: usize) -> f64 {
    let mut acc = 0.0;
    for (i, &ci) in coeffs.iter().enumerate().skip(m) {
        let mut factor = ci;
        for j in 0..m {
            factor *= (i - j) as f64;
        }
        acc += factor * t.powi((i - m) as i32);
    }
    acc
}

/// `m`-th derivative of `a0 + sum_k a_k cos(k w t) + b_k sin(k w t)` at `t`.
/// Differentiating shifts each term's phase by a quarter period.
fn trig_eval(coeffs: &[f64], omega: f64, t: f64, m: usize) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let shift = m as f64 * std::f64::consts::FRAC_PI_2;
    let mut acc = if m == 0 { coeffs[0] } else { 0.0 };
    for (k, pair) in coeffs[1..].chunks(2).enumerate() {
        let w = (k + 1) as f64 * omega;
        let u = w * t;
        let scale = w.powi(m as i32);
        acc += pair[0] * scale * (u + shift).cos();
        acc += pair[1] * scale * (u + shift).sin();
    }
    acc
}
