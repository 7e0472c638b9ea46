//! Uniform radial grids, quadrature, and finite-difference stencils.

use crate::error::{Result, SolveError};

/// Default mesh spacing for production profiles.
pub const DEFAULT_H: f64 = 0.0025;

/// A uniform grid `r_k = r_min + k·h`, `k = 0..n`.
///
/// `r_min` is strictly positive: the reduced radial functions vanish like
/// `r^{L+1}` at the origin and the centrifugal term is singular there, so the
/// mesh starts one step away from `r = 0` by default.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    h: f64,
    n: usize,
}

impl RadialGrid {
    /// Builds a grid with `n` points spanning `[r_min, r_max]`.
    ///
    /// Requirements: `0 < r_min < r_max`, both finite, `n ≥ 16`.
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite()) || r_min <= 0.0 || r_max <= r_min {
            return Err(SolveError::Domain(format!(
                "grid requires 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if n < 16 {
            return Err(SolveError::Domain(format!("grid needs at least 16 points, got {n}")));
        }
        let h = (r_max - r_min) / (n - 1) as f64;
        Ok(RadialGrid { r_min, h, n })
    }

    /// Production profile: spacing [`DEFAULT_H`], first point at one spacing
    /// from the origin, last point at (approximately) `r_max`.
    pub fn default_span(r_max: f64) -> Result<Self> {
        Self::with_spacing(DEFAULT_H, r_max)
    }

    /// Grid with the given spacing from `r_min = h` out to at least `r_max`.
    pub fn with_spacing(h: f64, r_max: f64) -> Result<Self> {
        if !(h.is_finite() && r_max.is_finite()) || h <= 0.0 || r_max <= 2.0 * h {
            return Err(SolveError::Domain(format!(
                "spacing profile requires 0 < h and r_max > 2h, got h = {h}, r_max = {r_max}"
            )));
        }
        let n = ((r_max - h) / h).ceil() as usize + 1;
        Ok(RadialGrid { r_min: h, h, n: n.max(16) })
    }

    /// Mesh spacing.
    #[must_use]
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of points.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// First radius.
    #[must_use]
    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    /// Last radius.
    #[must_use]
    pub fn r_max(&self) -> f64 {
        self.r(self.n - 1)
    }

    /// Radius of point `k`.
    #[must_use]
    pub fn r(&self, k: usize) -> f64 {
        self.r_min + k as f64 * self.h
    }

    /// All radii in order.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|k| self.r(k))
    }

    /// Samples a function on every grid point.
    #[must_use]
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.points().map(f).collect()
    }
}

/// Composite Simpson integral of uniformly spaced samples.
///
/// Even sample counts use Simpson's 3/8 rule on the last four points so the
/// whole integral stays fourth-order accurate.
#[must_use]
pub fn integrate(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            if n % 2 == 1 {
                simpson_odd(values, h)
            } else {
                let main = simpson_odd(&values[..n - 3], h);
                let tail = &values[n - 4..];
                main + 3.0 * h / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3])
            }
        }
    }
}

fn simpson_odd(values: &[f64], h: f64) -> f64 {
    debug_assert!(values.len() % 2 == 1 && values.len() >= 3);
    let mut sum = values[0] + values[values.len() - 1];
    for (k, v) in values.iter().enumerate().skip(1).take(values.len() - 2) {
        sum += if k % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

/// Fourth-order first derivative of uniformly spaced samples.
///
/// Five-point central stencil in the interior, one-sided five-point stencils
/// at the two points nearest each boundary. Needs at least 5 samples.
#[must_use]
pub fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "derivative stencil needs at least 5 samples, got {n}");
    let y = values;
    let mut out = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    out[0] = c * (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]);
    out[1] = c * (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]);
    for k in 2..n - 2 {
        out[k] = c * (y[k - 2] - 8.0 * y[k - 1] + 8.0 * y[k + 1] - y[k + 2]);
    }
    out[n - 2] = -c * (-3.0 * y[n - 1] - 10.0 * y[n - 2] + 18.0 * y[n - 3] - 6.0 * y[n - 4]
        + y[n - 5]);
    out[n - 1] = -c * (-25.0 * y[n - 1] + 48.0 * y[n - 2] - 36.0 * y[n - 3] + 16.0 * y[n - 4]
        - 3.0 * y[n - 5]);
    out
}
