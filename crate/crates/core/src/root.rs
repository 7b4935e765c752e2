//! Bracketed scalar root finding: bisection safeguarded secant steps.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// `|f(x)|` at the returned point.
    pub residual: f64,
    pub iterations: usize,
}

/// Finds a root of `f` in `[lo, hi]`, which must bracket a sign change.
///
/// Iteration stops once `|f(x)| <= f_tol` or the bracket has collapsed to a
/// few ulps. Each step tries the secant through the bracket ends and falls
/// back to bisection whenever the secant point leaves the bracket or the
/// bracket failed to halve on the previous step.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, f_tol: f64, max_iter: usize) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() || fa * fb > 0.0 {
        return Err(Error::BracketFailure { lo, hi });
    }
    if fa == 0.0 {
        return Ok(Root {
            x: a,
            residual: 0.0,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Root {
            x: b,
            residual: 0.0,
            iterations: 0,
        });
    }

    let mut best = if fa.abs() < fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    let mut last_width = (b - a).abs();
    let mut force_bisect = false;

    for iter in 1..=max_iter {
        let secant = b - fb * (b - a) / (fb - fa);
        let inside = secant > a.min(b) && secant < a.max(b);
        let x = if inside && !force_bisect {
            secant
        } else {
            0.5 * (a + b)
        };
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx.abs() <= f_tol || fx == 0.0 {
            return Ok(Root {
                x,
                residual: fx.abs(),
                iterations: iter,
            });
        }
        if (fa < 0.0) == (fx < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        let width = (b - a).abs();
        force_bisect = width > 0.5 * last_width;
        last_width = width;
        if width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            return Ok(Root {
                x: best.0,
                residual: best.1.abs(),
                iterations: iter,
            });
        }
    }
    Err(Error::NoConvergence(format!(
        "no root within {f_tol} after {max_iter} iterations, best residual {}",
        best.1.abs()
    )))
}
