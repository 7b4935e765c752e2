//! Regression and correlation over scatter data.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::ln_beta_regularized;

const MIN_POINTS: usize = 3;

/// How `y = a x^b` is fitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerLawMethod {
    /// Least squares on the original scale, `min sum (y - a x^b)^2`,
    /// solved by Levenberg-Marquardt from the log-log estimate. R² is
    /// computed on the original scale.
    #[default]
    Nonlinear,
    /// Ordinary least squares of `ln y` on `ln x`. R² is computed in log
    /// space.
    LogLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub amplitude: f64,
    pub exponent: f64,
    pub r_squared: f64,
    pub n_points: usize,
    pub method: PowerLawMethod,
}

impl PowerLawFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.amplitude * x.powf(self.exponent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub pearson_r: f64,
    pub p_value: f64,
    /// Natural log of the p-value; finite where `p_value` has underflowed.
    pub ln_p_value: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlation {
    pub r: f64,
    /// Two-sided p-value of the t test for zero correlation. Never below
    /// `f64::MIN_POSITIVE`; smaller values are reported as that bound with
    /// the exact magnitude in `ln_p_value`.
    pub p_value: f64,
    pub ln_p_value: f64,
    pub n_points: usize,
}

fn check_len(points: &[(f64, f64)]) -> Result<()> {
    if points.len() < MIN_POINTS {
        return Err(Error::TooFewPoints {
            needed: MIN_POINTS,
            got: points.len(),
        });
    }
    Ok(())
}

struct Moments {
    mean_x: f64,
    mean_y: f64,
    sxx: f64,
    syy: f64,
    sxy: f64,
}

fn moments(points: &[(f64, f64)]) -> Moments {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    Moments {
        mean_x,
        mean_y,
        sxx,
        syy,
        sxy,
    }
}

/// Two-sided p-value of a sample correlation `r` over `n` points, in log
/// space. With `t = r sqrt((n-2)/(1-r^2))` the tail is
/// `I_{1-r^2}((n-2)/2, 1/2)`, so no t statistic is formed.
fn ln_p_for_correlation(r: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    let one_minus_r2 = ((1.0 - r) * (1.0 + r)).max(0.0);
    if one_minus_r2 == 0.0 {
        return f64::NEG_INFINITY;
    }
    ln_beta_regularized(0.5 * df, 0.5, one_minus_r2, r * r)
}

fn p_from_ln(ln_p: f64) -> f64 {
    ln_p.exp().clamp(f64::MIN_POSITIVE, 1.0)
}

/// Sample Pearson correlation with its two-sided p-value.
pub fn pearson(points: &[(f64, f64)]) -> Result<Correlation> {
    check_len(points)?;
    let m = moments(points);
    if m.sxx == 0.0 {
        return Err(Error::ZeroVariance("x"));
    }
    if m.syy == 0.0 {
        return Err(Error::ZeroVariance("y"));
    }
    let r = (m.sxy / (m.sxx * m.syy).sqrt()).clamp(-1.0, 1.0);
    let ln_p = ln_p_for_correlation(r, points.len()).min(0.0);
    Ok(Correlation {
        r,
        p_value: p_from_ln(ln_p),
        ln_p_value: ln_p,
        n_points: points.len(),
    })
}

/// Ordinary least squares of y on x.
pub fn fit_linear(points: &[(f64, f64)]) -> Result<LinearFit> {
    check_len(points)?;
    let m = moments(points);
    if m.sxx == 0.0 {
        return Err(Error::ZeroVariance("x"));
    }
    let slope = m.sxy / m.sxx;
    let intercept = m.mean_y - slope * m.mean_x;
    let (r, ln_p) = if m.syy == 0.0 {
        // a perfectly flat response: no correlation to test
        (0.0, 0.0)
    } else {
        let r = (m.sxy / (m.sxx * m.syy).sqrt()).clamp(-1.0, 1.0);
        (r, ln_p_for_correlation(r, points.len()).min(0.0))
    };
    Ok(LinearFit {
        intercept,
        slope,
        pearson_r: r,
        p_value: p_from_ln(ln_p),
        ln_p_value: ln_p,
        r_squared: r * r,
        n_points: points.len(),
    })
}

/// Residuals `y - (intercept + slope x)` of a linear fit.
pub fn linear_residuals(fit: &LinearFit, points: &[(f64, f64)]) -> Vec<f64> {
    points.iter().map(|&(x, y)| y - fit.predict(x)).collect()
}

/// Residuals `y - a x^b` of a power-law fit on the original scale.
pub fn power_residuals(fit: &PowerLawFit, points: &[(f64, f64)]) -> Vec<f64> {
    points.iter().map(|&(x, y)| y - fit.predict(x)).collect()
}

/// Fits `y = a x^b` by nonlinear least squares.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    fit_power_law_with(points, PowerLawMethod::Nonlinear)
}

pub fn fit_power_law_with(points: &[(f64, f64)], method: PowerLawMethod) -> Result<PowerLawFit> {
    check_len(points)?;
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::NonPositivePoint { x, y });
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let log_fit = fit_linear(&logs)?;
    let log_log = PowerLawFit {
        amplitude: log_fit.intercept.exp(),
        exponent: log_fit.slope,
        r_squared: log_fit.r_squared,
        n_points: points.len(),
        method: PowerLawMethod::LogLog,
    };
    match method {
        PowerLawMethod::LogLog => Ok(log_log),
        PowerLawMethod::Nonlinear => {
            levenberg_marquardt(points, log_log.amplitude, log_log.exponent)
        }
    }
}

fn sum_sq(points: &[(f64, f64)], a: f64, b: f64) -> f64 {
    points
        .iter()
        .map(|&(x, y)| (y - a * x.powf(b)).powi(2))
        .sum()
}

fn levenberg_marquardt(points: &[(f64, f64)], a0: f64, b0: f64) -> Result<PowerLawFit> {
    const MAX_ITER: usize = 500;
    let (mut a, mut b) = (a0, b0);
    let mut ssr = sum_sq(points, a, b);
    let mut lambda = 1e-3;
    let mut converged = false;

    for _ in 0..MAX_ITER {
        // normal equations J^T J delta = J^T r for model m = a x^b
        let (mut jaa, mut jab, mut jbb, mut ga, mut gb) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(x, y) in points {
            let xb = x.powf(b);
            let da = xb;
            let db = a * xb * x.ln();
            let r = y - a * xb;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        let mut improved = false;
        while lambda < 1e16 {
            let (maa, mbb) = (jaa * (1.0 + lambda), jbb * (1.0 + lambda));
            let det = maa * mbb - jab * jab;
            let step_a = (ga * mbb - gb * jab) / det;
            let step_b = (maa * gb - jab * ga) / det;
            let (na, nb) = (a + step_a, b + step_b);
            let new_ssr = sum_sq(points, na, nb);
            if new_ssr.is_finite() && new_ssr <= ssr {
                let small_step =
                    step_a.abs() <= 1e-14 * a.abs() && step_b.abs() <= 1e-14 * b.abs().max(1.0);
                let small_gain = ssr - new_ssr <= 1e-15 * ssr;
                a = na;
                b = nb;
                ssr = new_ssr;
                lambda = (lambda * 0.1).max(1e-12);
                improved = true;
                converged = small_step || small_gain;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            // no downhill step at any damping: at a minimum to machine precision
            converged = true;
        }
        if converged {
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("power-law least squares".into()));
    }
    let m = moments(points);
    let r_squared = if m.syy > 0.0 {
        (1.0 - ssr / m.syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(PowerLawFit {
        amplitude: a,
        exponent: b,
        r_squared,
        n_points: points.len(),
        method: PowerLawMethod::Nonlinear,
    })
}

/// Inverts a power-law fit element-wise: `x = (h / a)^(1 / b)`.
pub fn power_transform(fit: &PowerLawFit, h_values: &[f64]) -> Result<Vec<f64>> {
    if fit.amplitude.is_nan()
        || fit.amplitude <= 0.0
        || fit.exponent == 0.0
        || !fit.exponent.is_finite()
    {
        return Err(Error::InvalidArgument(format!(
            "cannot invert power law with a = {}, b = {}",
            fit.amplitude, fit.exponent
        )));
    }
    let inv = 1.0 / fit.exponent;
    h_values
        .iter()
        .map(|&h| {
            if h > 0.0 {
                Ok((h / fit.amplitude).powf(inv))
            } else {
                Err(Error::InvalidArgument(format!(
                    "cannot invert nonpositive value {h}"
                )))
            }
        })
        .collect()
}
