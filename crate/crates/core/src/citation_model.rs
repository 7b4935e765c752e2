//! Closed-form lognormal citation mathematics.
//!
//! Citations are treated as a continuous variable here. Expected counts are
//! fractional and are never rounded; integer citation counts only appear in
//! [`crate::montecarlo`].

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::erfc;

/// Location and scale of the log of the citation count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LognormalParams {
    mu: f64,
    sigma: f64,
}

impl LognormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParams { mu, sigma });
        }
        Ok(Self { mu, sigma })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A research system: a citation distribution and a number of papers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    params: LognormalParams,
    n_papers: u64,
}

impl SeriesSpec {
    pub fn new(params: LognormalParams, n_papers: u64) -> Result<Self> {
        if n_papers == 0 {
            return Err(Error::EmptySeries);
        }
        Ok(Self { params, n_papers })
    }

    /// Shorthand for `SeriesSpec::new(LognormalParams::new(mu, sigma)?, n)`.
    pub fn from_parts(mu: f64, sigma: f64, n_papers: u64) -> Result<Self> {
        Self::new(LognormalParams::new(mu, sigma)?, n_papers)
    }

    pub fn params(&self) -> LognormalParams {
        self.params
    }

    pub fn n_papers(&self) -> u64 {
        self.n_papers
    }

    /// The same distribution with a different number of papers.
    pub fn with_papers(&self, n_papers: u64) -> Result<Self> {
        Self::new(self.params, n_papers)
    }
}

/// Strictly ascending positive citation thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet(Vec<f64>);

impl ThresholdSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidThresholds("empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidThresholds(format!(
                "{bad} is not a positive finite value"
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidThresholds(
                "values must be strictly increasing".into(),
            ));
        }
        Ok(Self(values))
    }

    /// The six thresholds tabulated for every series: 5, 10, 20, 50, 100, 500.
    pub fn standard() -> Self {
        Self(vec![5.0, 10.0, 20.0, 50.0, 100.0, 500.0])
    }

    /// The standard set plus 30, the threshold of the mean-citation line.
    pub fn extended() -> Self {
        Self(vec![5.0, 10.0, 20.0, 30.0, 50.0, 100.0, 500.0])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One value per threshold, in threshold order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdMap {
    entries: Vec<(f64, f64)>,
}

impl ThresholdMap {
    pub fn from_fn(thresholds: &ThresholdSet, mut f: impl FnMut(f64) -> f64) -> Self {
        Self {
            entries: thresholds.values().iter().map(|&x| (x, f(x))).collect(),
        }
    }

    pub fn get(&self, threshold: f64) -> Option<f64> {
        self.entries
            .iter()
            .find(|(x, _)| *x == threshold)
            .map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn thresholds(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(x, _)| *x)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn check_citations(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveCitations(c))
    }
}

/// Lognormal probability density at `c` citations.
pub fn pdf(c: f64, params: LognormalParams) -> Result<f64> {
    check_citations(c)?;
    let z = (c.ln() - params.mu) / params.sigma;
    Ok((-0.5 * z * z).exp() / (params.sigma * c * (2.0 * PI).sqrt()))
}

/// Expected number of papers per unit citation at `c`: `N * pdf(c)`.
pub fn number_density(c: f64, spec: SeriesSpec) -> Result<f64> {
    Ok(spec.n_papers as f64 * pdf(c, spec.params)?)
}

/// Probability that a paper receives `c` or more citations.
///
/// Evaluated as `erfc((ln c - mu) / (sigma sqrt 2)) / 2`, which equals
/// `1/2 + erf((mu - ln c) / (sigma sqrt 2)) / 2` but keeps full relative
/// precision deep in the upper tail.
pub fn survival_probability(c: f64, params: LognormalParams) -> Result<f64> {
    check_citations(c)?;
    Ok(0.5 * erfc((c.ln() - params.mu) / (params.sigma * SQRT_2)))
}

/// Expected number of papers with `c` or more citations, `F(c) = N P(c)`.
pub fn expected_exceeding(c: f64, spec: SeriesSpec) -> Result<f64> {
    Ok(spec.n_papers as f64 * survival_probability(c, spec.params)?)
}

/// Mean citations per paper, `exp(mu + sigma^2 / 2)`.
pub fn mean_citations(params: LognormalParams) -> f64 {
    (params.mu + 0.5 * params.sigma * params.sigma).exp()
}

/// Total citations of the series, `N exp(mu + sigma^2 / 2)`.
pub fn total_citations(spec: SeriesSpec) -> f64 {
    spec.n_papers as f64 * mean_citations(spec.params)
}
