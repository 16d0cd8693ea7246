//! Bracketed scalar root finding: Newton steps safeguarded by bisection.

use crate::{GeometryError, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            x_tol: 1e-15,
            f_tol: 0.0,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]` given `f(lo)` and `f(hi)` of opposite
/// sign. Newton steps use a central-difference derivative and are
/// rejected whenever they leave the current bracket or fail to halve it.
pub fn find_root<F>(f: F, mut lo: f64, mut hi: f64, opts: RootOptions) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(GeometryError::Precondition(format!(
            "root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
        )));
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, x);
    for _ in 0..opts.max_iter {
        let fx = f(x);
        if fx.abs() < best.0 {
            best = (fx.abs(), x);
        }
        if fx == 0.0 || fx.abs() <= opts.f_tol {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= opts.x_tol * (1.0 + x.abs()) {
            return Ok(best.1);
        }

        let width = hi - lo;
        let dx = 1e-7 * width.abs().max(1e-12);
        let slope = (f(x + dx) - f(x - dx)) / (2.0 * dx);
        let newton = x - fx / slope;
        let inside = newton > lo.min(hi) && newton < lo.max(hi);
        x = if slope.is_finite() && slope != 0.0 && inside && (newton - x).abs() < 0.5 * width.abs()
        {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(GeometryError::SolverFailure {
        iterations: opts.max_iter,
        residual: best.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_root() {
        let r = find_root(|x| -x * x + 2.0 * x + 1.0, 2.0, 3.0, RootOptions::default()).unwrap();
        assert!((r - (1.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn discontinuous_derivative_falls_back_to_bisection() {
        let r = find_root(|x: f64| x.cbrt() - 0.1, -1.0, 2.0, RootOptions::default()).unwrap();
        assert!((r - 1e-3).abs() < 1e-14);
    }

    #[test]
    fn unbracketed_is_rejected() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, RootOptions::default()),
            Err(GeometryError::Precondition(_))
        ));
    }
}
