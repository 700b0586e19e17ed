//! Helix and slant-helix detection, and the ratio identities tying a donor's
//! invariants to its partner's.
//!
//! A curve is a general helix exactly when `tau/kappa` is constant, and a
//! slant helix exactly when
//!
//! ```text
//! sigma = kappa^2 / (kappa^2 + tau^2)^(3/2) * (tau/kappa)'
//! ```
//!
//! is constant. Both tests reduce a per-sample series to a relative spread
//! and compare against `constancy_tol`. Measured series flip sign wherever
//! the measured frame reverses at a curvature zero, so each connected stretch
//! of well-conditioned samples is sign-aligned before the spread is taken.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::field::FieldKind;
use crate::frenet::FrenetTable;
use crate::numeric::median;
use crate::partner::{components, matched_well_conditioned, ResidualStats};

/// Classification outcome, in decreasing order of specificity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    Plane,
    Helix,
    SlantHelix,
    Generic,
}

impl CurveClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveClass::Plane => "plane",
            CurveClass::Helix => "helix",
            CurveClass::SlantHelix => "slant_helix",
            CurveClass::Generic => "generic",
        }
    }
}

/// The slant-helix function per retained sample, aligned with
/// `table.samples()`. Zero on samples the well-conditioned mask excludes,
/// where the ratio derivative is not measurable.
pub fn sigma_values(table: &FrenetTable, cfg: &Tolerances) -> Vec<f64> {
    let deriv = table.ratio_derivative_values(cfg);
    table
        .samples()
        .iter()
        .zip(deriv)
        .map(|(x, d)| {
            let k2 = x.kappa * x.kappa;
            let sq = k2 + x.tau * x.tau;
            k2 / (sq * sq.sqrt()) * d
        })
        .collect()
}

/// One invariant series reduced to a constancy measurement.
#[derive(Debug, Clone)]
pub struct InvariantSeries {
    /// Arc length of each surviving sample.
    pub s: Vec<f64>,
    /// Sign-aligned values, after masking and endpoint trimming.
    pub values: Vec<f64>,
    /// Mean of `values`.
    pub mean: f64,
    /// Relative standard deviation of `values`; when the mean is too small
    /// for a relative measure the absolute deviation is rescaled so that the
    /// same `constancy_tol` threshold applies.
    pub spread: f64,
    /// Connected sign-aligned stretches the series split into.
    pub components: usize,
    /// Whether `spread <= constancy_tol`.
    pub constant: bool,
}

fn invariant_series(table: &FrenetTable, raw: &[f64], cfg: &Tolerances) -> Result<InvariantSeries> {
    let mask = table.well_conditioned_mask(cfg);
    let mut grid: Vec<usize> = Vec::new();
    let mut s: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    for (j, x) in table.samples().iter().enumerate() {
        if mask[j] {
            grid.push(x.grid_index);
            s.push(x.s);
            values.push(raw[j]);
        }
    }

    // Boundary stencils are one-sided and noticeably noisier; drop the outer
    // trim_fraction of surviving samples on each side.
    let cut = (values.len() as f64 * cfg.trim_fraction).floor() as usize;
    if values.len() <= 2 * cut {
        return Err(Error::EmptyTable);
    }
    let keep = cut..values.len() - cut;
    let grid = &grid[keep.clone()];
    let s = s[keep.clone()].to_vec();
    let mut values = values[keep].to_vec();

    let mut n_components = 0;
    let mut start = 0;
    for idx in 1..=values.len() {
        let broken = idx == values.len() || grid[idx] != grid[idx - 1] + 1;
        if !broken {
            continue;
        }
        n_components += 1;
        if median(&values[start..idx]) < 0.0 {
            for v in &mut values[start..idx] {
                *v = -*v;
            }
        }
        start = idx;
    }

    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    let spread = if mean.abs() >= cfg.near_zero_mean {
        std / mean.abs()
    } else {
        std * (cfg.constancy_tol / cfg.near_zero_mean)
    };

    Ok(InvariantSeries {
        s,
        values,
        mean,
        spread,
        components: n_components,
        constant: spread <= cfg.constancy_tol,
    })
}

/// Constancy measurement of `tau/kappa`.
pub fn helix_invariant(table: &FrenetTable, cfg: &Tolerances) -> Result<InvariantSeries> {
    invariant_series(table, &table.ratio_values(), cfg)
}

/// Constancy measurement of the slant-helix function.
pub fn slant_helix_invariant(table: &FrenetTable, cfg: &Tolerances) -> Result<InvariantSeries> {
    invariant_series(table, &sigma_values(table, cfg), cfg)
}

/// Full classification of one table.
#[derive(Debug, Clone)]
pub struct Classification {
    pub class: CurveClass,
    /// Largest `|tau|` over well-conditioned samples (plane test input).
    pub max_abs_tau: f64,
    pub helix: InvariantSeries,
    pub slant: InvariantSeries,
}

/// Decide plane / helix / slant helix / generic, in that order of precedence.
/// Every earlier class is a degenerate case of the later ones, so the first
/// test that passes names the curve most specifically.
pub fn classify_curve(table: &FrenetTable, cfg: &Tolerances) -> Result<Classification> {
    let mask = table.well_conditioned_mask(cfg);
    let max_abs_tau = table
        .samples()
        .iter()
        .zip(&mask)
        .filter(|(_, m)| **m)
        .map(|(x, _)| x.tau.abs())
        .fold(f64::NAN, f64::max);
    if max_abs_tau.is_nan() {
        return Err(Error::EmptyTable);
    }

    let helix = helix_invariant(table, cfg)?;
    let slant = slant_helix_invariant(table, cfg)?;
    let class = if max_abs_tau <= cfg.plane_tol {
        CurveClass::Plane
    } else if helix.constant {
        CurveClass::Helix
    } else if slant.constant {
        CurveClass::SlantHelix
    } else {
        CurveClass::Generic
    };

    Ok(Classification { class, max_abs_tau, helix, slant })
}

/// Residuals of the invariant identity linking donor and partner.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RatioIdentityReport {
    /// The kind's ratio identity, after sign resolution.
    pub ratio: ResidualStats,
    /// `sigma = sigma_partner` (constant-angle kind only).
    pub sigma: Option<ResidualStats>,
    /// Sign-resolved stretches.
    pub components: usize,
}

fn componentwise_signed_residuals(
    matched: &[(usize, usize, usize)],
    lhs: &[f64],
    rhs: &[f64],
) -> Vec<f64> {
    let mut out = vec![0.0; lhs.len()];
    for comp in components(matched) {
        let mut best = (f64::INFINITY, 1.0);
        for sign in [1.0, -1.0] {
            let worst = comp
                .clone()
                .map(|i| (lhs[i] - sign * rhs[i]).abs())
                .fold(0.0, f64::max);
            if worst < best.0 {
                best = (worst, sign);
            }
        }
        for i in comp {
            out[i] = (lhs[i] - best.1 * rhs[i]).abs();
        }
    }
    out
}

/// Check the ratio identity for one partner kind over matched samples:
///
/// ```text
/// evolute:   tau/kappa = sigma_partner
/// mannheim:  tau/kappa = +-1 / |sigma_partner|
/// bertrand:  tau/kappa = (e r cos th - sin th) / (cos th + e r sin th),
///            and additionally sigma = sigma_partner,
/// ```
///
/// where `r` is the partner's `tau/kappa`. Signs: the mannheim branch
/// follows the donor ratio's sign sample by sample; the evolute and sigma
/// identities are resolved once per connected stretch, since the partner's
/// measured invariants flip with its frame at curvature zeros. The bertrand
/// `e = +-1` is the sign hidden by measuring the partner curvature as
/// `|kappa cos th - tau sin th|`; it is constant along a stretch, so both
/// inversions are tried and the branch that fits is kept.
pub fn check_ratio_identity(
    kind: FieldKind,
    donor: &FrenetTable,
    partner: &FrenetTable,
    theta: Option<f64>,
    cfg: &Tolerances,
) -> Result<RatioIdentityReport> {
    if kind == FieldKind::Custom {
        return Err(Error::KindMismatch { requested: "evolute|mannheim|bertrand", actual: "custom" });
    }
    if kind == FieldKind::Bertrand && theta.is_none() {
        return Err(Error::Spec("the constant-angle ratio identity needs theta".into()));
    }
    let matched = matched_well_conditioned(donor, partner, cfg)?;
    if matched.is_empty() {
        return Err(Error::EmptyTable);
    }
    let n_components = components(&matched).len();

    let donor_ratio: Vec<f64> = matched
        .iter()
        .map(|&(_, j, _)| {
            let d = &donor.samples()[j];
            d.tau / d.kappa
        })
        .collect();
    let partner_sigma_all = sigma_values(partner, cfg);
    let partner_sigma: Vec<f64> = matched.iter().map(|&(_, _, k)| partner_sigma_all[k]).collect();

    let (ratio, sigma) = match kind {
        FieldKind::Evolute => {
            let res = componentwise_signed_residuals(&matched, &donor_ratio, &partner_sigma);
            (ResidualStats::from_values(&res), None)
        }
        FieldKind::Mannheim => {
            let res: Vec<f64> = donor_ratio
                .iter()
                .zip(&partner_sigma)
                .map(|(r, sg)| (r - r.signum() / sg.abs()).abs())
                .collect();
            (ResidualStats::from_values(&res), None)
        }
        FieldKind::Bertrand => {
            let th = theta.expect("checked above");
            let r_meas: Vec<f64> = matched
                .iter()
                .map(|&(_, _, k)| {
                    let p = &partner.samples()[k];
                    p.tau / p.kappa
                })
                .collect();
            let predicted = |i: usize, eps: f64| {
                (eps * r_meas[i] * th.cos() - th.sin()) / (th.cos() + eps * r_meas[i] * th.sin())
            };
            let mut res = vec![0.0; matched.len()];
            for comp in components(&matched) {
                let mut best = (f64::INFINITY, 1.0);
                for eps in [1.0, -1.0] {
                    let worst = comp
                        .clone()
                        .map(|i| (donor_ratio[i] - predicted(i, eps)).abs())
                        .fold(0.0, f64::max);
                    if worst < best.0 {
                        best = (worst, eps);
                    }
                }
                for i in comp {
                    res[i] = (donor_ratio[i] - predicted(i, best.1)).abs();
                }
            }

            let donor_sigma_all = sigma_values(donor, cfg);
            let donor_sigma: Vec<f64> = matched.iter().map(|&(_, j, _)| donor_sigma_all[j]).collect();
            let sres = componentwise_signed_residuals(&matched, &donor_sigma, &partner_sigma);
            (
                ResidualStats::from_values(&res),
                Some(ResidualStats::from_values(&sres)),
            )
        }
        FieldKind::Custom => unreachable!("rejected above"),
    };

    Ok(RatioIdentityReport { ratio, sigma, components: n_components })
}
