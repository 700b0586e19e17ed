//! Unit direction fields X(s) = a(s) T + b(s) N + c(s) B over a donor frame.
//!
//! Each constructor bakes the donor's frame samples into the field, so a
//! built [`DirectionField`] can be evaluated at any arc length on the donor
//! lattice, and between lattice points too (coefficients interpolate
//! linearly with renormalization, frames advance by the local Frenet
//! rotation), which is what the half-steps of the tracer need.
//!
//! The three named constructions differ only in their coefficient functions:
//!
//! ```text
//! evolute:   a = 0,            b = sin(phi),     c = cos(phi),   phi = integral of tau + offset
//! mannheim:  a = sin(phi),     b = cos(phi),     c = 0,          phi = integral of kappa + offset
//! bertrand:  a = cos(theta),   b = 0,            c = sin(theta), theta constant
//! ```

use crate::config::Tolerances;
use crate::curve::Vec3;
use crate::error::{Error, Result};
use crate::frenet::FrenetTable;
use crate::numeric::cumulative_simpson;

/// Which coefficient family a field was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Evolute,
    Mannheim,
    Bertrand,
    Custom,
}

impl FieldKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldKind::Evolute => "evolute",
            FieldKind::Mannheim => "mannheim",
            FieldKind::Bertrand => "bertrand",
            FieldKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone)]
struct Node {
    coeff: [f64; 3],
    frame: [Vec3; 3],
    kappa: f64,
    tau: f64,
}

/// One retained lattice point of a field, as exported to CSV.
#[derive(Debug, Clone, Copy)]
pub struct FieldSample {
    pub s: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: Vec3,
}

/// A unit vector field on the frame of a donor curve, sampled on the donor's
/// arc-length lattice.
#[derive(Debug, Clone)]
pub struct DirectionField {
    kind: FieldKind,
    phase_offset: f64,
    theta: Option<f64>,
    s0: f64,
    spacing: f64,
    nodes: Vec<Option<Node>>,
    /// Cumulative quadrature phase per lattice point (evolute and mannheim).
    phases: Option<Vec<f64>>,
}

impl DirectionField {
    /// Normal-binormal field whose integral curves run orthogonally to the
    /// donor tangent: coefficients (0, sin(phi), cos(phi)) with phi the
    /// cumulative integral of tau plus `phase_offset`. Needs a gap-free donor
    /// table because the phase is a quadrature over the whole lattice.
    pub fn evolute(table: &FrenetTable, phase_offset: f64) -> Result<Self> {
        let phases = Self::phase_series(table, phase_offset, |x| x.tau)?;
        let nodes = Self::full_lattice_nodes(table, |_, phi| [0.0, phi.sin(), phi.cos()], &phases);
        Ok(Self {
            kind: FieldKind::Evolute,
            phase_offset,
            theta: None,
            s0: table.s_start(),
            spacing: table.spacing(),
            nodes,
            phases: Some(phases),
        })
    }

    /// Tangent-normal field with coefficients (sin(phi), cos(phi), 0), phi the
    /// cumulative integral of kappa plus `phase_offset`. Fails when the donor
    /// torsion vanishes identically: the partner's curvature would be zero
    /// everywhere and the construction collapses.
    pub fn mannheim(table: &FrenetTable, phase_offset: f64, cfg: &Tolerances) -> Result<Self> {
        let max_abs_tau = table.samples().iter().map(|x| x.tau.abs()).fold(0.0, f64::max);
        if max_abs_tau < cfg.kappa_min {
            return Err(Error::MannheimDegenerate { max_abs_tau });
        }
        let phases = Self::phase_series(table, phase_offset, |x| x.kappa)?;
        let nodes = Self::full_lattice_nodes(table, |_, phi| [phi.sin(), phi.cos(), 0.0], &phases);
        Ok(Self {
            kind: FieldKind::Mannheim,
            phase_offset,
            theta: None,
            s0: table.s_start(),
            spacing: table.spacing(),
            nodes,
            phases: Some(phases),
        })
    }

    /// Constant-angle tangent-binormal field (cos(theta), 0, sin(theta)).
    /// Fails when kappa cos(theta) - tau sin(theta) vanishes across the whole
    /// grid, since every partner-curvature sample would then be zero.
    pub fn bertrand(table: &FrenetTable, theta: f64, cfg: &Tolerances) -> Result<Self> {
        if !(theta > -std::f64::consts::PI && theta <= std::f64::consts::PI) {
            return Err(Error::Spec(format!("theta must lie in (-pi, pi], got {theta}")));
        }
        let worst = table
            .samples()
            .iter()
            .map(|x| (x.kappa * theta.cos() - x.tau * theta.sin()).abs())
            .fold(0.0, f64::max);
        if worst < cfg.kappa_min {
            return Err(Error::BertrandDegenerate { theta });
        }
        let coeff = [theta.cos(), 0.0, theta.sin()];
        let nodes = Self::retained_nodes(table, |_| coeff);
        Ok(Self {
            kind: FieldKind::Bertrand,
            phase_offset: 0.0,
            theta: Some(theta),
            s0: table.s_start(),
            spacing: table.spacing(),
            nodes,
            phases: None,
        })
    }

    /// Arbitrary coefficient functions of arc length; validated to be unit
    /// norm at every retained sample.
    pub fn custom(
        table: &FrenetTable,
        a: impl Fn(f64) -> f64,
        b: impl Fn(f64) -> f64,
        c: impl Fn(f64) -> f64,
        cfg: &Tolerances,
    ) -> Result<Self> {
        for x in table.samples() {
            let norm_sq = a(x.s).powi(2) + b(x.s).powi(2) + c(x.s).powi(2);
            if (norm_sq - 1.0).abs() > cfg.unit_coeff_tol {
                return Err(Error::NotUnitNorm { s: x.s, norm_sq });
            }
        }
        let nodes = Self::retained_nodes(table, |s| [a(s), b(s), c(s)]);
        Ok(Self {
            kind: FieldKind::Custom,
            phase_offset: 0.0,
            theta: None,
            s0: table.s_start(),
            spacing: table.spacing(),
            nodes,
            phases: None,
        })
    }

    fn phase_series(table: &FrenetTable, offset: f64, pick: fn(&crate::frenet::FrenetSample) -> f64) -> Result<Vec<f64>> {
        if !table.is_gap_free() {
            return Err(Error::GapInInterval { gaps: table.gaps().len() });
        }
        let series: Vec<f64> = table.samples().iter().map(pick).collect();
        let mut phases = cumulative_simpson(&series, table.spacing());
        for p in &mut phases {
            *p += offset;
        }
        Ok(phases)
    }

    fn full_lattice_nodes(
        table: &FrenetTable,
        coeff_of: impl Fn(f64, f64) -> [f64; 3],
        phases: &[f64],
    ) -> Vec<Option<Node>> {
        table
            .samples()
            .iter()
            .zip(phases)
            .map(|(x, &phi)| {
                Some(Node {
                    coeff: coeff_of(x.s, phi),
                    frame: [x.tangent, x.normal, x.binormal],
                    kappa: x.kappa,
                    tau: x.tau,
                })
            })
            .collect()
    }

    fn retained_nodes(table: &FrenetTable, coeff_of: impl Fn(f64) -> [f64; 3]) -> Vec<Option<Node>> {
        (0..table.lattice_len())
            .map(|i| {
                table.sample_at(i).map(|x| Node {
                    coeff: coeff_of(x.s),
                    frame: [x.tangent, x.normal, x.binormal],
                    kappa: x.kappa,
                    tau: x.tau,
                })
            })
            .collect()
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn phase_offset(&self) -> f64 {
        self.phase_offset
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn s_start(&self) -> f64 {
        self.s0
    }

    pub fn s_end(&self) -> f64 {
        self.s0 + (self.nodes.len() - 1) as f64 * self.spacing
    }

    /// Cumulative quadrature phase at lattice point `i` (evolute/mannheim).
    pub fn phase_at(&self, i: usize) -> Option<f64> {
        self.phases.as_ref().and_then(|p| p.get(i)).copied()
    }

    /// Coefficients at lattice point `i`, if the point is retained.
    pub fn coeff_at(&self, i: usize) -> Option<[f64; 3]> {
        self.nodes.get(i).and_then(|n| n.as_ref()).map(|n| n.coeff)
    }

    /// Retained lattice samples in order, for export.
    pub fn grid_samples(&self) -> Vec<FieldSample> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| {
                n.as_ref().map(|node| FieldSample {
                    s: self.s0 + i as f64 * self.spacing,
                    a: node.coeff[0],
                    b: node.coeff[1],
                    c: node.coeff[2],
                    x: combine(&node.coeff, &node.frame),
                })
            })
            .collect()
    }

    /// X(s) as a unit vector. At lattice points this is the stored sample.
    /// Between them, the coefficient triple is linearly interpolated and
    /// renormalized, and the frame is carried over from both neighboring
    /// nodes by the constant-curvature Frenet rotation (exact when kappa and
    /// tau are constant over the step). `s` may overhang the lattice by up to
    /// one spacing (clamped), anything further is out of domain.
    pub fn evaluate(&self, s: f64) -> Result<Vec3> {
        let n = self.nodes.len();
        let max_x = (n - 1) as f64;
        let x = (s - self.s0) / self.spacing;
        if x < -1.0 - 1e-9 || x > max_x + 1.0 + 1e-9 {
            return Err(Error::OutOfDomain {
                t: s,
                lo: self.s0,
                hi: self.s0 + max_x * self.spacing,
            });
        }
        let x = x.clamp(0.0, max_x);
        let nearest = x.round();
        if (x - nearest).abs() <= 1e-9 {
            let node = self.nodes[nearest as usize].as_ref().ok_or(Error::GapSample { s })?;
            return Ok(combine(&node.coeff, &node.frame));
        }
        let i = x.floor() as usize;
        let w = x - i as f64;
        let (lo, hi) = match (&self.nodes[i], &self.nodes[i + 1]) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::GapSample { s }),
        };
        let mut coeff = [0.0; 3];
        let mut norm_sq = 0.0;
        for (c, (a, b)) in coeff.iter_mut().zip(lo.coeff.iter().zip(&hi.coeff)) {
            *c = (1.0 - w) * a + w * b;
            norm_sq += *c * *c;
        }
        let scale = norm_sq.sqrt().recip();
        for c in &mut coeff {
            *c *= scale;
        }
        Ok(combine(&coeff, &between_frame(lo, hi, w, self.spacing)))
    }
}

fn combine(coeff: &[f64; 3], frame: &[Vec3; 3]) -> Vec3 {
    (coeff[0] * frame[0] + coeff[1] * frame[1] + coeff[2] * frame[2]).normalize()
}

/// Frame at fraction `w` between two nodes one `spacing` apart. Both node
/// triads are advanced to the target point by the rotation the Frenet
/// equations generate when kappa and tau are held at their values midway
/// along each advanced stretch, and the two estimates are averaged. The
/// average is not renormalized: [`combine`] normalizes the assembled vector,
/// and a uniform scale on the frame drops out there.
fn between_frame(lo: &Node, hi: &Node, w: f64, spacing: f64) -> [Vec3; 3] {
    let at = |f: f64| ((1.0 - f) * lo.kappa + f * hi.kappa, (1.0 - f) * lo.tau + f * hi.tau);
    let (k_fwd, t_fwd) = at(w / 2.0);
    let fwd = rotate_frame(&lo.frame, k_fwd, t_fwd, w * spacing);
    let (k_bwd, t_bwd) = at((1.0 + w) / 2.0);
    let bwd = rotate_frame(&hi.frame, k_bwd, t_bwd, -(1.0 - w) * spacing);
    [fwd[0] + bwd[0], fwd[1] + bwd[1], fwd[2] + bwd[2]]
}

/// Advance a Frenet triad by signed arc length `ell` with kappa and tau held
/// constant: a rotation about the axis `tau T + kappa B` at angular rate
/// `sqrt(kappa^2 + tau^2)`, applied in frame coordinates.
fn rotate_frame(frame: &[Vec3; 3], kappa: f64, tau: f64, ell: f64) -> [Vec3; 3] {
    let omega = kappa.hypot(tau);
    let angle = omega * ell;
    if angle == 0.0 {
        return *frame;
    }
    let (kx, kz) = (tau / omega, kappa / omega);
    let (sin, cos) = angle.sin_cos();
    let one_c = 1.0 - cos;
    // Column j holds the advanced j-th frame vector in old-frame coordinates.
    let r = [
        [1.0 - one_c * kz * kz, -sin * kz, one_c * kx * kz],
        [sin * kz, cos, -sin * kx],
        [one_c * kx * kz, sin * kx, 1.0 - one_c * kx * kx],
    ];
    std::array::from_fn(|j| frame[0] * r[0][j] + frame[1] * r[1][j] + frame[2] * r[2][j])
}
