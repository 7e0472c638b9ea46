//! Scalar root-finding and one-dimensional optimization helpers.
//!
//! Everything here works on brackets: callers first establish an interval with
//! a sign change (or a unimodal maximum), then refine. The refiner is a
//! safeguarded bisection/secant hybrid — each step tries the secant point and
//! falls back to the midpoint whenever the secant step leaves the bracket or
//! fails to shrink it fast enough.

use crate::error::{Result, SolveError};

/// Iteration cap for all bracketed solves.
pub const MAX_ITER: u32 = 200;

/// A converged root.
#[derive(Debug, Clone, Copy)]
pub struct Root {
    /// Abscissa of the root.
    pub x: f64,
    /// Residual `f(x)` at the returned abscissa.
    pub fx: f64,
    /// Number of refinement iterations used.
    pub iterations: u32,
}

/// Finds the root of `f` inside `[lo, hi]`, which must bracket a sign change.
///
/// Converges when the bracket width drops below
/// `max(xtol, 4·ε·max(|lo|,|hi|))`. Returns `NumericalFailure` if the
/// endpoints do not bracket, produce non-finite values, or the iteration cap
/// is hit.
pub fn solve_bracketed(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<Root> {
    let (mut a, mut b) = (lo, hi);
    if !(a < b) {
        return Err(SolveError::NumericalFailure(format!(
            "invalid bracket [{a}, {b}]"
        )));
    }
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(SolveError::NumericalFailure(format!(
            "non-finite endpoint values f({a}) = {fa}, f({b}) = {fb}"
        )));
    }
    if fa == 0.0 {
        return Ok(Root { x: a, fx: 0.0, iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: 0.0, iterations: 0 });
    }
    if fa.signum() == fb.signum() {
        return Err(SolveError::NumericalFailure(format!(
            "no sign change on [{a}, {b}]: f = {fa} and {fb}"
        )));
    }

    for it in 0..MAX_ITER {
        let scale = a.abs().max(b.abs());
        let width_goal = xtol.max(4.0 * f64::EPSILON * scale);
        if b - a <= width_goal {
            // Report the endpoint with the smaller residual.
            let (x, fx) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
            return Ok(Root { x, fx, iterations: it });
        }

        // Secant proposal, clipped away from the endpoints so the bracket
        // keeps shrinking even when the function is very flat on one side.
        let mid = 0.5 * (a + b);
        let mut x = mid;
        let denom = fb - fa;
        if denom != 0.0 {
            let secant = a - fa * (b - a) / denom;
            let margin = 0.01 * (b - a);
            if secant > a + margin && secant < b - margin {
                x = secant;
            }
        }

        let fx = f(x);
        if !fx.is_finite() {
            return Err(SolveError::NumericalFailure(format!(
                "non-finite value f({x}) = {fx} during refinement"
            )));
        }
        if fx == 0.0 {
            return Ok(Root { x, fx: 0.0, iterations: it + 1 });
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(SolveError::NumericalFailure(format!(
        "root refinement did not converge within {MAX_ITER} iterations on [{a}, {b}]"
    )))
}

/// Scans `[lo, hi]` at `n+1` uniform points and returns every adjacent pair
/// with a sign change. Non-finite samples are skipped (they break any
/// bracket through them).
pub fn scan_sign_changes(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Vec<(f64, f64)> {
    assert!(n >= 1 && lo < hi, "scan needs lo < hi and n >= 1");
    let step = (hi - lo) / n as f64;
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=n {
        let x = if k == n { hi } else { lo + k as f64 * step };
        let fx = f(x);
        if !fx.is_finite() {
            prev = None;
            continue;
        }
        if let Some((px, pfx)) = prev {
            if fx == 0.0 || pfx.signum() != fx.signum() {
                brackets.push((px, x));
            }
        }
        prev = Some((x, fx));
    }
    brackets
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x_max, f(x_max))`. Non-finite values are treated as `-∞`.
pub fn golden_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut guard = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::NEG_INFINITY
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = guard(c);
    let mut fd = guard(d);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= xtol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = guard(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = guard(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, guard(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn finds_cubic_root() {
        let r = solve_bracketed(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r.x, 2f64.powf(1.0 / 3.0), max_relative = 1e-12);
    }

    #[test]
    fn rejects_sign_preserving_bracket() {
        assert!(solve_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn handles_flat_sides() {
        // Steep on one side, nearly flat on the other; the clipped secant
        // must still converge.
        let r = solve_bracketed(|x: f64| x.tanh() - 0.999, -5.0, 10.0, 1e-13).unwrap();
        assert_relative_eq!(r.x, 0.999f64.atanh(), max_relative = 1e-10);
    }

    #[test]
    fn scan_finds_all_sine_roots() {
        let b = scan_sign_changes(|x| x.sin(), 0.1, 9.0, 600);
        assert_eq!(b.len(), 2); // pi and 2*pi
        let r0 = solve_bracketed(|x| x.sin(), b[0].0, b[0].1, 1e-13).unwrap();
        let r1 = solve_bracketed(|x| x.sin(), b[1].0, b[1].1, 1e-13).unwrap();
        assert_relative_eq!(r0.x, std::f64::consts::PI, max_relative = 1e-11);
        assert_relative_eq!(r1.x, 2.0 * std::f64::consts::PI, max_relative = 1e-11);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(|x| 3.0 - (x - 1.25) * (x - 1.25), -4.0, 6.0, 1e-12);
        // Near a smooth peak the objective is flat to machine precision over
        // a width ~sqrt(eps), so no derivative-free bracket method can place
        // the abscissa better than that; the peak *value* is still exact.
        assert_relative_eq!(x, 1.25, epsilon = 1e-7);
        assert_relative_eq!(fx, 3.0, epsilon = 1e-12);
    }
}
