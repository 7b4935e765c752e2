//! Analytic and simulated h-index behaviour for lognormally distributed
//! citation series.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] holds the error function and the Student-t tail used by the
//!   correlation tests.
//! * [`citation_model`] evaluates lognormal densities, survival
//!   probabilities and expected paper counts above citation thresholds.
//! * [`hindex`] solves the continuous fixed point `F(h) = h` and builds
//!   h-versus-N curves.
//! * [`montecarlo`] draws discretized synthetic citation series and averages
//!   their empirical indicators over many replicates.
//! * [`indicators`] assembles per-series metrics and the 30-series study.
//! * [`stats`] fits power laws and lines and computes Pearson correlations.

pub mod citation_model;
pub mod error;
pub mod hindex;
pub mod indicators;
pub mod montecarlo;
pub mod root;
pub mod special;
pub mod stats;

pub use citation_model::{LognormalParams, SeriesSpec, ThresholdMap, ThresholdSet};
pub use error::{Error, Result};
pub use hindex::{HCurve, HSolution};
pub use indicators::{SeriesMetrics, StudyTable};
pub use montecarlo::{CitationSample, Discretization, ReplicateSummary};
pub use stats::{Correlation, LinearFit, PowerLawFit, PowerLawMethod};
