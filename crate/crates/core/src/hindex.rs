//! The h-index of a lognormal research system.
//!
//! In the continuous picture `h` is the fixed point of the exceedance count,
//! `F(h) = h`, where `F(c) = N P(c)` is the expected number of papers with at
//! least `c` citations. `F` decreases in `c` while the identity increases, so
//! the fixed point is unique and lies in `(0, N]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::citation_model::{expected_exceeding, LognormalParams, SeriesSpec};
use crate::error::{Error, Result};
use crate::root::find_root;

/// Default residual tolerance of [`solve_h`], in units of h.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default number of grid points of [`h_curve`].
pub const DEFAULT_CURVE_POINTS: usize = 50;

const MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HSolution {
    pub h_continuous: f64,
    /// Nearest integer to `h_continuous`, as printed in tables.
    pub h_reported: u64,
    /// `|F(h) - h|` at `h_continuous`.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `F(h) = h` for the given series.
///
/// The residual `g(h) = F(h) - h` has slope below -1 everywhere, so a
/// residual within `tolerance` also places `h` within `tolerance` of the
/// exact fixed point.
pub fn solve_h(spec: SeriesSpec, tolerance: f64) -> Result<HSolution> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let n = spec.n_papers() as f64;
    let g = |h: f64| {
        expected_exceeding(h, spec)
            .map(|f| f - h)
            .unwrap_or(f64::NAN)
    };

    // g(0+) = N > 0, but for very small mu the survival probability may
    // already be tiny at 1e-9 N; walk the lower end down until g is positive.
    let mut lo = 1e-9 * n;
    while g(lo) <= 0.0 {
        lo *= 1e-3;
        if lo < 1e-300 {
            return Err(Error::BracketFailure { lo, hi: n });
        }
    }
    let root = find_root(g, lo, n, tolerance, MAX_ITER)?;
    Ok(HSolution {
        h_continuous: root.x,
        h_reported: root.x.round() as u64,
        residual: root.residual,
        iterations: root.iterations,
    })
}

/// Large-N approximation `h ~ exp(sigma sqrt(2 ln N))`.
///
/// The approximation carries no dependence on mu.
pub fn h_asymptotic(spec: SeriesSpec) -> Result<f64> {
    if spec.n_papers() < 2 {
        return Err(Error::InvalidArgument(
            "asymptotic h needs at least two papers".into(),
        ));
    }
    let ln_n = (spec.n_papers() as f64).ln();
    Ok((spec.params().sigma() * (2.0 * ln_n).sqrt()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HCurvePoint {
    pub n_papers: u64,
    pub h: f64,
    pub h_asymptotic: Option<f64>,
}

/// h as a function of the number of papers for one distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HCurve {
    pub params: LognormalParams,
    pub points: Vec<HCurvePoint>,
    pub includes_asymptotic: bool,
}

impl HCurve {
    /// The h value solved at exactly `n_papers`, if that N is on the grid.
    pub fn h_at(&self, n_papers: u64) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.n_papers == n_papers)
            .map(|p| p.h)
    }
}

/// Geometrically spaced integer grid from `n_min` to `n_max` inclusive.
/// Grid values that round to the same integer are merged, so the grid can
/// hold fewer than `points` entries on narrow ranges.
pub fn geometric_grid(n_min: u64, n_max: u64, points: usize) -> Result<Vec<u64>> {
    if n_min < 1 || n_min >= n_max {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n_min < n_max, got n_min = {n_min}, n_max = {n_max}"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 grid points, got {points}"
        )));
    }
    let (lo, hi) = ((n_min as f64).ln(), (n_max as f64).ln());
    let step = (hi - lo) / (points - 1) as f64;
    let mut grid: Vec<u64> = (0..points)
        .map(|i| match i {
            0 => n_min,
            i if i == points - 1 => n_max,
            i => (lo + step * i as f64).exp().round() as u64,
        })
        .collect();
    grid.dedup();
    Ok(grid)
}

/// Solves h over a geometric grid of paper counts.
pub fn h_curve(
    params: LognormalParams,
    n_min: u64,
    n_max: u64,
    points: usize,
    with_asymptotic: bool,
) -> Result<HCurve> {
    let grid = geometric_grid(n_min, n_max, points)?;
    h_curve_at(params, &grid, with_asymptotic)
}

/// Solves h at the given paper counts, which are sorted and deduplicated
/// first. Points are solved in parallel; output order follows N.
pub fn h_curve_at(
    params: LognormalParams,
    n_values: &[u64],
    with_asymptotic: bool,
) -> Result<HCurve> {
    let mut grid = n_values.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty paper-count grid".into()));
    }
    let points = grid
        .par_iter()
        .map(|&n| {
            let spec = SeriesSpec::new(params, n)?;
            let h = solve_h(spec, DEFAULT_TOLERANCE)?.h_continuous;
            let h_asymptotic = match (with_asymptotic, n >= 2) {
                (true, true) => Some(h_asymptotic(spec)?),
                _ => None,
            };
            Ok(HCurvePoint {
                n_papers: n,
                h,
                h_asymptotic,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HCurve {
        params,
        points,
        includes_asymptotic: with_asymptotic,
    })
}
