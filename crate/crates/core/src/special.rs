//! Small special-function helpers: generalized Laguerre polynomials.

/// Generalized Laguerre polynomial `L_n^{(α)}(x)` by the stable upward
/// three-term recurrence
/// `(k+1)·L_{k+1} = (2k+1+α-x)·L_k - (k+α)·L_{k-1}`.
#[must_use]
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0; // L_0
    let mut cur = 1.0 + alpha - x; // L_1
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Derivative `d/dx L_n^{(α)}(x) = -L_{n-1}^{(α+1)}(x)`.
#[must_use]
pub fn laguerre_deriv(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1.0, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_orders_match_closed_forms() {
        let (a, x) = (1.5, 0.7);
        assert_relative_eq!(laguerre(0, a, x), 1.0);
        assert_relative_eq!(laguerre(1, a, x), 1.0 + a - x);
        let l2 = x * x / 2.0 - (a + 2.0) * x + (a + 1.0) * (a + 2.0) / 2.0;
        assert_relative_eq!(laguerre(2, a, x), l2, max_relative = 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (a, x, h) = (3.0, 2.3, 1e-6);
        for n in [1u32, 2, 5, 9] {
            let fd = (laguerre(n, a, x + h) - laguerre(n, a, x - h)) / (2.0 * h);
            assert_relative_eq!(laguerre_deriv(n, a, x), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn nu1_hydrogenic_node_location() {
        // L_1^{(α)}(x) vanishes at x = 1 + α.
        let alpha = 3.0; // 2L+1 with L = 1
        assert_relative_eq!(laguerre(1, alpha, 1.0 + alpha), 0.0);
    }
}
