//! Frenet frames, curvature, and torsion sampled on a uniform arc-length grid.
//!
//! [`frenet_apparatus`] expects a unit-speed curve (the output of
//! `arc_length_reparametrize`) and assembles, per grid sample,
//!
//! ```text
//! T = beta',   kappa = |beta''|,   N = beta''/kappa,   B = T x N,
//! tau = <beta' x beta'', beta'''> / |beta' x beta''|^2
//! ```
//!
//! when the curve carries closed-form derivatives. Tables built from bare
//! position samples get `tau = -<B', N>` with `B'` from five-point grid
//! stencils instead, the best available without a third derivative.
//!
//! Samples whose curvature falls below `kappa_min` are excluded: the normal is
//! not defined there. Exclusions are reported as [`Gap`]s, and every consumer
//! that differentiates along the table works per contiguous run so no stencil
//! ever crosses a gap.

use crate::config::Tolerances;
use crate::curve::{ParamCurve, Vec3};
use crate::error::{Error, Result};
use crate::numeric::{grid_derivative_series, median};

/// One retained grid sample of the frame field.
#[derive(Debug, Clone)]
pub struct FrenetSample {
    /// Arc-length parameter of the sample (lattice point).
    pub s: f64,
    /// Grid index of the sample on the underlying lattice.
    pub grid_index: usize,
    pub point: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

/// An excluded subinterval of the lattice (curvature below the floor, or a
/// run too short to differentiate).
#[derive(Debug, Clone, Copy)]
pub struct Gap {
    pub s_lo: f64,
    pub s_hi: f64,
    /// Number of lattice points dropped.
    pub samples: usize,
}

/// Frame, curvature, and torsion samples on a uniform arc-length lattice.
#[derive(Debug, Clone)]
pub struct FrenetTable {
    s0: f64,
    spacing: f64,
    n_lattice: usize,
    samples: Vec<FrenetSample>,
    lattice: Vec<Option<u32>>,
    gaps: Vec<Gap>,
    stencil_torsion: bool,
}

impl FrenetTable {
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn s_start(&self) -> f64 {
        self.s0
    }

    pub fn s_end(&self) -> f64 {
        self.s0 + self.spacing * (self.n_lattice - 1) as f64
    }

    /// Number of lattice points the table was built over (retained or not).
    pub fn lattice_len(&self) -> usize {
        self.n_lattice
    }

    pub fn samples(&self) -> &[FrenetSample] {
        &self.samples
    }

    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    /// True when every lattice point was retained.
    pub fn is_gap_free(&self) -> bool {
        self.samples.len() == self.n_lattice
    }

    /// Arc-length coordinate of lattice point `i`.
    pub fn s_at(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.spacing
    }

    /// Retained sample at lattice point `i`, if any.
    pub fn sample_at(&self, i: usize) -> Option<&FrenetSample> {
        self.lattice.get(i).copied().flatten().map(|j| &self.samples[j as usize])
    }

    /// Maximal runs of consecutively retained samples, as ranges into
    /// [`Self::samples`].
    pub fn runs(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for j in 1..=self.samples.len() {
            let broken = j == self.samples.len()
                || self.samples[j].grid_index != self.samples[j - 1].grid_index + 1;
            if broken {
                out.push(start..j);
                start = j;
            }
        }
        out
    }

    pub fn kappa_median(&self) -> f64 {
        median(&self.samples.iter().map(|x| x.kappa).collect::<Vec<_>>())
    }

    /// `tau/kappa` per retained sample, aligned with [`Self::samples`].
    pub fn ratio_values(&self) -> Vec<f64> {
        self.samples.iter().map(|x| x.tau / x.kappa).collect()
    }

    /// Arc-length derivative of `tau/kappa` per retained sample, aligned with
    /// [`Self::samples`]. Differentiation never crosses a gap or a singular
    /// neighborhood: the ratio diverges where curvature vanishes, and a
    /// stencil reaching into that zone would poison the nearest
    /// well-conditioned samples. Samples outside a well-conditioned stretch,
    /// or on one too short to differentiate, report zero; the same mask that
    /// bounded the stretches excludes them from every consumer.
    pub fn ratio_derivative_values(&self, cfg: &Tolerances) -> Vec<f64> {
        let ratio = self.ratio_values();
        let mask = self.well_conditioned_mask(cfg);
        let mut out = vec![0.0; ratio.len()];
        let mut j = 0;
        while j < ratio.len() {
            if !mask[j] {
                j += 1;
                continue;
            }
            let start = j;
            j += 1;
            while j < ratio.len()
                && mask[j]
                && self.samples[j].grid_index == self.samples[j - 1].grid_index + 1
            {
                j += 1;
            }
            if j - start >= 5 {
                let d = grid_derivative_series(&ratio[start..j], self.spacing, 1);
                out[start..j].copy_from_slice(&d);
            }
        }
        out
    }

    /// Per-sample mask of "well-conditioned" samples: not within
    /// `cfg.singular_window` lattice steps of a gap or of a sample whose
    /// curvature is below `cfg.singular_kappa_frac` of the median. Ratio
    /// series (tau/kappa and its derivative) are only trustworthy there.
    ///
    /// Tables whose torsion came from grid stencils additionally drop the
    /// outermost [`STENCIL_BOUNDARY`] samples of every run: those torsions
    /// involve one-sided stencils, which are lower order than the centered
    /// interior ones.
    pub fn well_conditioned_mask(&self, cfg: &Tolerances) -> Vec<bool> {
        let thresh = cfg.singular_kappa_frac * self.kappa_median();
        let mut singular = vec![false; self.n_lattice];
        for (i, slot) in self.lattice.iter().enumerate() {
            match slot {
                None => singular[i] = true,
                Some(j) => {
                    if self.samples[*j as usize].kappa < thresh {
                        singular[i] = true;
                    }
                }
            }
        }
        let w = cfg.singular_window;
        let mut blocked = vec![false; self.n_lattice];
        for (i, _) in singular.iter().enumerate().filter(|(_, sing)| **sing) {
            let lo = i.saturating_sub(w);
            let hi = (i + w).min(self.n_lattice - 1);
            for b in blocked.iter_mut().take(hi + 1).skip(lo) {
                *b = true;
            }
        }
        if self.stencil_torsion {
            for run in self.runs() {
                let depth = STENCIL_BOUNDARY.min(run.len());
                for j in run.start..run.start + depth {
                    blocked[self.samples[j].grid_index] = true;
                }
                for j in run.end - depth..run.end {
                    blocked[self.samples[j].grid_index] = true;
                }
            }
        }
        self.samples.iter().map(|x| !blocked[x.grid_index]).collect()
    }

    /// Pair up retained samples of two tables on the same lattice. Returns
    /// `(grid index, self sample index, other sample index)` and fails when
    /// the lattices differ in origin, spacing, or length.
    pub fn matched_with(&self, other: &FrenetTable) -> Result<Vec<(usize, usize, usize)>> {
        let tol = 1e-9 * self.spacing.max(1e-300);
        if (self.spacing - other.spacing).abs() > tol
            || (self.s0 - other.s0).abs() > 1e-9 * self.spacing.max(self.s0.abs())
            || self.n_lattice != other.n_lattice
        {
            return Err(Error::GridMismatch {
                detail: format!(
                    "origin/spacing/len ({}, {}, {}) vs ({}, {}, {})",
                    self.s0, self.spacing, self.n_lattice, other.s0, other.spacing, other.n_lattice
                ),
            });
        }
        let mut out = Vec::new();
        for i in 0..self.n_lattice {
            if let (Some(a), Some(b)) = (self.lattice[i], other.lattice[i]) {
                out.push((i, a as usize, b as usize));
            }
        }
        Ok(out)
    }

    /// Worst orthonormality residual over the table: deviations of the three
    /// norms from one and of the three pairwise inner products from zero.
    pub fn max_frame_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for x in &self.samples {
            worst = worst
                .max((x.tangent.norm() - 1.0).abs())
                .max((x.normal.norm() - 1.0).abs())
                .max((x.binormal.norm() - 1.0).abs())
                .max(x.tangent.dot(&x.normal).abs())
                .max(x.tangent.dot(&x.binormal).abs())
                .max(x.normal.dot(&x.binormal).abs());
        }
        worst
    }
}

/// Minimum grid size: the torsion stencil needs five samples per run, and the
/// series trims need headroom beyond that.
pub const MIN_GRID: usize = 9;

/// Samples at each end of a run whose stencil-measured torsion is not fully
/// centered. Torsion needs the binormal's derivative, the binormal two
/// positions of stencil room, and the derivative two binormals more, so the
/// outermost four samples of a run go through at least one one-sided stencil.
pub const STENCIL_BOUNDARY: usize = 4;

/// Sample the Frenet apparatus of a unit-speed curve on a uniform grid of
/// `n_samples` points spanning its domain. Uses the curve's closed-form
/// derivatives when present, otherwise five-point grid stencils over the
/// sampled positions.
pub fn frenet_apparatus(curve: &ParamCurve, n_samples: usize, cfg: &Tolerances) -> Result<FrenetTable> {
    if n_samples < MIN_GRID {
        return Err(Error::TooFewSamples { got: n_samples, min: MIN_GRID });
    }
    let (lo, hi) = curve.domain();
    let h = (hi - lo) / (n_samples - 1) as f64;
    let points: Vec<Vec3> = (0..n_samples)
        .map(|i| curve.evaluate(lo + i as f64 * h))
        .collect::<Result<_>>()?;

    if curve.has_analytic_derivatives() {
        let mut d1 = Vec::with_capacity(n_samples);
        let mut d2 = Vec::with_capacity(n_samples);
        let mut d3 = Vec::with_capacity(n_samples);
        for i in 0..n_samples {
            let d = curve.derivatives(lo + i as f64 * h, 3)?;
            d1.push(d[0]);
            d2.push(d[1]);
            d3.push(d[2]);
        }
        assemble_table(lo, h, points, d1, d2, Some(d3), cfg)
    } else {
        table_from_grid_points(lo, h, &points, cfg)
    }
}

/// Build a table from positions already sampled on a uniform arc-length grid
/// (used for traced curves, which exist only as samples). First and second
/// derivatives come from five-point stencils, one-sided at the ends.
pub fn table_from_grid_points(s0: f64, spacing: f64, points: &[Vec3], cfg: &Tolerances) -> Result<FrenetTable> {
    if points.len() < MIN_GRID {
        return Err(Error::TooFewSamples { got: points.len(), min: MIN_GRID });
    }
    let axes: Vec<Vec<f64>> = (0..3).map(|a| points.iter().map(|p| p[a]).collect()).collect();
    let d1_axes: Vec<Vec<f64>> = axes.iter().map(|v| grid_derivative_series(v, spacing, 1)).collect();
    let d2_axes: Vec<Vec<f64>> = axes.iter().map(|v| grid_derivative_series(v, spacing, 2)).collect();
    let d1: Vec<Vec3> = (0..points.len())
        .map(|i| Vec3::new(d1_axes[0][i], d1_axes[1][i], d1_axes[2][i]))
        .collect();
    let d2: Vec<Vec3> = (0..points.len())
        .map(|i| Vec3::new(d2_axes[0][i], d2_axes[1][i], d2_axes[2][i]))
        .collect();
    assemble_table(s0, spacing, points.to_vec(), d1, d2, None, cfg)
}

fn assemble_table(
    s0: f64,
    spacing: f64,
    points: Vec<Vec3>,
    d1: Vec<Vec3>,
    d2: Vec<Vec3>,
    d3: Option<Vec<Vec3>>,
    cfg: &Tolerances,
) -> Result<FrenetTable> {
    let n = points.len();
    let stencil_torsion = d3.is_none();
    let retained: Vec<bool> = d2.iter().map(|v| v.norm() >= cfg.kappa_min).collect();

    // Contiguous retained runs; runs shorter than the torsion stencil are dropped.
    let mut keep = vec![false; n];
    {
        let mut i = 0;
        while i < n {
            if !retained[i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < n && retained[i] {
                i += 1;
            }
            if i - start >= 5 {
                for k in keep.iter_mut().take(i).skip(start) {
                    *k = true;
                }
            }
        }
    }

    let mut samples: Vec<FrenetSample> = Vec::new();
    let mut lattice: Vec<Option<u32>> = vec![None; n];
    let mut i = 0;
    while i < n {
        if !keep[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && keep[i] {
            i += 1;
        }
        let run = start..i;

        // Frame per sample; torsion from the triple product when a third
        // derivative exists, otherwise from grid stencils of B over the run.
        let mut frames = Vec::with_capacity(run.len());
        for j in run.clone() {
            let tangent = d1[j].normalize();
            let kappa = d2[j].norm();
            let normal = d2[j] / kappa;
            let binormal = tangent.cross(&normal).normalize();
            frames.push((tangent, normal, binormal, kappa));
        }
        let taus: Vec<f64> = match &d3 {
            Some(d3) => run
                .clone()
                .map(|j| {
                    let cross = d1[j].cross(&d2[j]);
                    cross.dot(&d3[j]) / cross.norm_squared()
                })
                .collect(),
            None => {
                let b_axes: Vec<Vec<f64>> =
                    (0..3).map(|a| frames.iter().map(|f| f.2[a]).collect()).collect();
                let bp: Vec<Vec<f64>> =
                    b_axes.iter().map(|v| grid_derivative_series(v, spacing, 1)).collect();
                (0..run.len())
                    .map(|local| {
                        let bprime = Vec3::new(bp[0][local], bp[1][local], bp[2][local]);
                        -bprime.dot(&frames[local].1)
                    })
                    .collect()
            }
        };

        for (local, j) in run.clone().enumerate() {
            let (tangent, normal, binormal, kappa) = frames[local];
            let tau = taus[local];
            lattice[j] = Some(samples.len() as u32);
            samples.push(FrenetSample {
                s: s0 + j as f64 * spacing,
                grid_index: j,
                point: points[j],
                tangent,
                normal,
                binormal,
                kappa,
                tau,
            });
        }
    }

    if samples.is_empty() {
        return Err(Error::EmptyTable);
    }

    let mut gaps = Vec::new();
    let mut i = 0;
    while i < n {
        if keep[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && !keep[i] {
            i += 1;
        }
        gaps.push(Gap {
            s_lo: s0 + start as f64 * spacing,
            s_hi: s0 + (i - 1) as f64 * spacing,
            samples: i - start,
        });
    }

    Ok(FrenetTable { s0, spacing, n_lattice: n, samples, lattice, gaps, stencil_torsion })
}
