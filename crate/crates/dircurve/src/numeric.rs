//! Shared numerical kernels: finite-difference weights on arbitrary stencils,
//! cumulative Simpson quadrature, and monotone cubic interpolation.
//!
//! These are deliberately small, allocation-light routines; everything higher
//! up (frame assembly, invariants, tracing) is built on them.

use crate::error::{Error, Result};

/// Finite-difference weights for the `order`-th derivative at `x0`, given the
/// stencil node locations (Fornberg's recurrence). Nodes need not be uniform
/// or contain `x0`. Returns one weight per node.
pub fn fd_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > order, "stencil of {n} nodes cannot produce derivative order {order}");
    let mut c = vec![vec![0.0f64; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// Derivative of uniformly spaced samples at index `i`, using a five-point
/// stencil of the requested order (fourth-order accurate for orders 1 and 2).
/// The stencil slides to one-sided form near the ends of the slice.
pub fn grid_derivative(values: &[f64], spacing: f64, i: usize, order: usize) -> f64 {
    let n = values.len();
    assert!(n >= 5, "grid derivative needs at least 5 samples");
    let first = i.saturating_sub(2).min(n - 5);
    let offsets: Vec<f64> = (0..5).map(|k| ((first + k) as f64 - i as f64) * spacing).collect();
    let w = fd_weights(0.0, &offsets, order);
    (0..5).map(|k| w[k] * values[first + k]).sum()
}

/// Derivative of a whole uniformly spaced series. Same stencils as
/// [`grid_derivative`], but the five weight sets are computed once.
pub fn grid_derivative_series(values: &[f64], spacing: f64, order: usize) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "grid derivative needs at least 5 samples");
    let wsets: Vec<Vec<f64>> = (0..5)
        .map(|o| {
            let offsets: Vec<f64> = (0..5).map(|k| (k as f64 - o as f64) * spacing).collect();
            fd_weights(0.0, &offsets, order)
        })
        .collect();
    (0..n)
        .map(|i| {
            let first = i.saturating_sub(2).min(n - 5);
            let w = &wsets[i - first];
            (0..5).map(|k| w[k] * values[first + k]).sum()
        })
        .collect()
}

/// Median of a slice (averages the middle pair for even lengths).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("median of non-finite values"));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Cumulative integral of uniformly spaced samples: composite Simpson over
/// successive pairs of intervals, with a trapezoid closing each odd prefix.
/// Output has the same length as the input and starts at zero.
pub fn cumulative_simpson(values: &[f64], spacing: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    let mut even = 0.0; // integral up to the last even index
    for k in (2..n).step_by(2) {
        let seg = spacing / 3.0 * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
        out[k] = even + seg;
        even = out[k];
    }
    for k in (1..n).step_by(2) {
        out[k] = out[k - 1] + spacing / 2.0 * (values[k - 1] + values[k]);
    }
    out
}

/// Cumulative integral of a function over `[a, b]` split into `intervals`
/// uniform pieces; each piece uses Simpson's rule with a midpoint evaluation,
/// and the running sum is compensated so long grids do not lose digits.
/// Returns the `intervals + 1` nodal values starting at zero.
pub fn cumulative_simpson_fn(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, intervals: usize) -> Vec<f64> {
    assert!(intervals >= 1 && b > a);
    let dt = (b - a) / intervals as f64;
    let mut out = Vec::with_capacity(intervals + 1);
    out.push(0.0);
    let mut sum = CompensatedSum::default();
    let mut left = f(a);
    for i in 0..intervals {
        let t0 = a + i as f64 * dt;
        let t1 = a + (i + 1) as f64 * dt;
        let right = f(t1);
        let mid = f(0.5 * (t0 + t1));
        sum.add(dt / 6.0 * (left + 4.0 * mid + right));
        out.push(sum.value());
        left = right;
    }
    out
}

/// Kahan-compensated scalar accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes). Built for
/// inverting strictly increasing data such as cumulative arc length; the
/// interpolant never overshoots, so the inverse stays monotone.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Spec("monotone interpolant needs two matched samples".into()));
        }
        let n = xs.len();
        for i in 1..n {
            if xs[i] <= xs[i - 1] {
                return Err(Error::DegenerateSpeed { t: xs[i], speed: 0.0 });
            }
        }
        let h: Vec<f64> = (0..n - 1).map(|i| xs[i + 1] - xs[i]).collect();
        let d: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut m = vec![0.0; n];
        m[0] = endpoint_slope(h[0], h.get(1).copied().unwrap_or(h[0]), d[0], d.get(1).copied().unwrap_or(d[0]));
        m[n - 1] = endpoint_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            d[n - 2],
            if n >= 3 { d[n - 3] } else { d[n - 2] },
        );
        for i in 1..n - 1 {
            if d[i - 1] * d[i] <= 0.0 {
                m[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        Ok(Self { xs, ys, slopes: m })
    }

    /// Evaluate at `x`, clamping to the data range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0] + self.slopes[0] * (x - self.xs[0]);
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1] + self.slopes[n - 1] * (x - self.xs[n - 1]);
        }
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            p => p - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

fn endpoint_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    // Three-point one-sided estimate, limited so the interpolant stays monotone.
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if (m / d0).abs() > 3.0 {
        3.0 * d0
    } else {
        m
    }
}
