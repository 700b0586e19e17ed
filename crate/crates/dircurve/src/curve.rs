//! Parametrized space curves: evaluation, derivatives, and reparametrization
//! by arc length.
//!
//! A [`ParamCurve`] wraps a position map `t -> R^3` on a closed interval,
//! optionally with a closed-form derivative supplier for orders 1..=3. When no
//! supplier is present, derivatives come from central finite differences
//! (fourth-order five-point stencils for orders 1 and 2, the seven-point
//! stencil for order 3), which need stencil room inside the domain.
//!
//! [`ParamCurve::arc_length_reparametrize`] integrates speed with composite
//! Simpson quadrature, inverts the cumulative length with a monotone cubic,
//! and returns a unit-speed curve on `[0, L]`. Closed-form derivatives survive
//! reparametrization through the chain rule.

use std::sync::Arc;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numeric::{fd_weights, CompensatedSum, MonotoneCubic};

/// 3-vector used for positions, derivatives, and frame fields.
pub type Vec3 = nalgebra::Vector3<f64>;

type PositionFn = dyn Fn(f64) -> Vec3 + Send + Sync;
type DerivativeFn = dyn Fn(f64, usize) -> Vec3 + Send + Sync;

/// A parametrized curve on a closed interval.
#[derive(Clone)]
pub struct ParamCurve {
    position: Arc<PositionFn>,
    analytic: Option<Arc<DerivativeFn>>,
    domain: (f64, f64),
    fd_step: f64,
}

impl std::fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamCurve")
            .field("domain", &self.domain)
            .field("analytic", &self.analytic.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl ParamCurve {
    /// Curve from a position map. Panics if the domain is empty or reversed.
    pub fn new(domain: (f64, f64), position: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> Self {
        assert!(
            domain.1 > domain.0 && domain.0.is_finite() && domain.1.is_finite(),
            "domain must be a non-empty finite interval"
        );
        Self {
            position: Arc::new(position),
            analytic: None,
            domain,
            fd_step: Tolerances::default().fd_step,
        }
    }

    /// Attach a closed-form derivative supplier. The supplier receives the
    /// parameter and a derivative order in 1..=3.
    pub fn with_derivatives(mut self, derivs: impl Fn(f64, usize) -> Vec3 + Send + Sync + 'static) -> Self {
        self.analytic = Some(Arc::new(derivs));
        self
    }

    /// Override the finite-difference step used when no supplier is present.
    pub fn with_fd_step(mut self, h: f64) -> Self {
        assert!(h > 0.0);
        self.fd_step = h;
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Length of the parameter interval (equals arc length once the curve has
    /// been reparametrized).
    pub fn param_span(&self) -> f64 {
        self.domain.1 - self.domain.0
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    /// Position at `t`. Errors if `t` is outside the domain (a sliver of
    /// roundoff slack is allowed at the ends).
    pub fn evaluate(&self, t: f64) -> Result<Vec3> {
        let slack = 1e-12 * self.param_span().max(1.0);
        if t < self.domain.0 - slack || t > self.domain.1 + slack {
            return Err(Error::OutOfDomain { t, lo: self.domain.0, hi: self.domain.1 });
        }
        Ok((self.position)(t.clamp(self.domain.0, self.domain.1)))
    }

    /// Derivatives of orders `1..=order` at `t` (`order` in 1..=3). Uses the
    /// closed-form supplier when present; otherwise central differences, which
    /// require stencil room of `2h` (orders 1-2) or `3h` (order 3) inside the
    /// domain.
    pub fn derivatives(&self, t: f64, order: usize) -> Result<Vec<Vec3>> {
        assert!((1..=3).contains(&order), "derivative order must be 1..=3");
        let slack = 1e-12 * self.param_span().max(1.0);
        if t < self.domain.0 - slack || t > self.domain.1 + slack {
            return Err(Error::OutOfDomain { t, lo: self.domain.0, hi: self.domain.1 });
        }
        if let Some(f) = &self.analytic {
            return Ok((1..=order).map(|k| f(t, k)).collect());
        }
        (1..=order).map(|k| self.fd_derivative(t, k)).collect()
    }

    fn fd_derivative(&self, t: f64, order: usize) -> Result<Vec3> {
        let h = self.fd_step;
        let radius = if order == 3 { 3 } else { 2 };
        let needed = radius as f64 * h;
        if t - needed < self.domain.0 - 1e-12 || t + needed > self.domain.1 + 1e-12 {
            return Err(Error::StencilOutOfDomain {
                t,
                needed,
                lo: self.domain.0,
                hi: self.domain.1,
            });
        }
        let offsets: Vec<f64> = (-(radius as i64)..=radius as i64).map(|k| k as f64 * h).collect();
        let w = fd_weights(0.0, &offsets, order);
        let mut acc = Vec3::zeros();
        for (k, &dt) in offsets.iter().enumerate() {
            if w[k] != 0.0 {
                acc += w[k] * (self.position)(t + dt);
            }
        }
        Ok(acc)
    }

    /// Speed `|alpha'(t)|`, falling back to a one-sided stencil where a central
    /// one would leave the domain (used by the length quadrature, which must
    /// evaluate at the very ends).
    fn speed_anywhere(&self, t: f64) -> f64 {
        if let Ok(d) = self.derivatives(t, 1) {
            return d[0].norm();
        }
        let h = self.fd_step;
        let (lo, hi) = self.domain;
        let base = if t + 4.0 * h > hi { hi - 4.0 * h } else { lo.max(t - 0.0) };
        let nodes: Vec<f64> = (0..5).map(|k| base + k as f64 * h).collect();
        let w = fd_weights(t, &nodes, 1);
        let mut acc = Vec3::zeros();
        for (k, &x) in nodes.iter().enumerate() {
            acc += w[k] * (self.position)(x.clamp(lo, hi));
        }
        acc.norm()
    }

    /// Reparametrize by arc length. Returns a curve on `[0, L]` whose
    /// parameter is arc length; `n_samples` sets the quadrature density (the
    /// cumulative-length grid uses several intervals per requested sample).
    /// Fails with [`Error::DegenerateSpeed`] if the speed drops below
    /// `cfg.speed_min` anywhere on the quadrature grid.
    pub fn arc_length_reparametrize(&self, n_samples: usize, cfg: &Tolerances) -> Result<ParamCurve> {
        let (t0, t1) = self.domain;
        let m = 4 * n_samples.max(256);
        let dt = (t1 - t0) / m as f64;

        // Cumulative length at the m+1 quadrature nodes, Simpson per interval.
        let mut cum = Vec::with_capacity(m + 1);
        cum.push(0.0);
        let mut sum = CompensatedSum::default();
        let mut left = self.checked_speed(t0, cfg)?;
        for i in 0..m {
            let ta = t0 + i as f64 * dt;
            let tb = t0 + (i + 1) as f64 * dt;
            let mid = self.checked_speed(0.5 * (ta + tb), cfg)?;
            let right = self.checked_speed(tb, cfg)?;
            sum.add(dt / 6.0 * (left + 4.0 * mid + right));
            cum.push(sum.value());
            left = right;
        }
        let total = cum[m];
        let ts: Vec<f64> = (0..=m).map(|i| t0 + i as f64 * dt).collect();
        let inverse = MonotoneCubic::new(cum, ts)?;

        let src_pos = Arc::clone(&self.position);
        let src_analytic = self.analytic.clone();
        let inv = Arc::new(inverse);

        let inv_pos = Arc::clone(&inv);
        let position = move |s: f64| {
            let t = inv_pos.eval(s);
            src_pos(t)
        };

        let analytic: Option<Arc<DerivativeFn>> = src_analytic.map(|f| {
            let inv_d = Arc::clone(&inv);
            Arc::new(move |s: f64, order: usize| -> Vec3 {
                let t = inv_d.eval(s);
                unit_speed_derivative(&*f, t, order)
            }) as Arc<DerivativeFn>
        });

        Ok(ParamCurve {
            position: Arc::new(position),
            analytic,
            domain: (0.0, total),
            fd_step: self.fd_step,
        })
    }

    fn checked_speed(&self, t: f64, cfg: &Tolerances) -> Result<f64> {
        let v = self.speed_anywhere(t);
        if v < cfg.speed_min {
            return Err(Error::DegenerateSpeed { t, speed: v });
        }
        Ok(v)
    }
}

/// Chain rule for derivatives of `beta(s) = alpha(t(s))` where `s` is arc
/// length, given closed-form derivatives of `alpha` at `t`. Uses
/// `dt/ds = 1/|alpha'|` and its derivatives; no interpolation error beyond the
/// location of `t` itself.
fn unit_speed_derivative(alpha: &(impl Fn(f64, usize) -> Vec3 + ?Sized), t: f64, order: usize) -> Vec3 {
    let a1 = alpha(t, 1);
    let v2 = a1.dot(&a1);
    let v = v2.sqrt();
    match order {
        1 => a1 / v,
        2 => {
            let a2 = alpha(t, 2);
            let w = a1.dot(&a2);
            a2 / v2 - a1 * (w / (v2 * v2))
        }
        3 => {
            let a2 = alpha(t, 2);
            let a3 = alpha(t, 3);
            let w = a1.dot(&a2);
            let wt = a2.dot(&a2) + a1.dot(&a3);
            let v4 = v2 * v2;
            // d/dt of beta'' expressed in t, then once more through dt/ds = 1/v.
            let df = a3 / v2 - a2 * (3.0 * w / v4) - a1 * (wt / v4) + a1 * (4.0 * w * w / (v4 * v2));
            df / v
        }
        _ => unreachable!("order checked by caller"),
    }
}
