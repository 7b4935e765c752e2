//! Synthetic citation series.
//!
//! A replicate draws `N` lognormal values, discretizes them into integer
//! citation counts and ranks them from highest to lowest. Indicators are
//! computed per replicate and then averaged.
//!
//! Every replicate owns an RNG seeded from `(master seed, replicate index)`
//! through a SplitMix64 finalizer, and the per-replicate results are reduced
//! in index order. Summaries are therefore bit-identical for any rayon pool
//! size.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::citation_model::{SeriesSpec, ThresholdMap, ThresholdSet};
use crate::error::{Error, Result};

/// How a continuous draw becomes an integer citation count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Discretization {
    /// Nearest integer, halves rounded up. The mean count stays within a
    /// few hundredths of the continuous mean, but `count >= x` corresponds
    /// to `value >= x - 0.5`.
    #[default]
    RoundHalfUp,
    /// Integer part. `count >= x` is exactly `value >= x` for integer `x`,
    /// at the cost of lowering the mean by about half a citation.
    Floor,
}

impl Discretization {
    pub fn apply(self, value: f64) -> u64 {
        match self {
            Discretization::RoundHalfUp => discretize(value),
            Discretization::Floor => value.floor() as u64,
        }
    }
}

/// Rounds a positive draw to the nearest integer, `floor(value + 0.5)`.
/// Draws below one half become uncited papers.
pub fn discretize(value: f64) -> u64 {
    (value + 0.5).floor() as u64
}

/// Citation counts of one synthetic series, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CitationSample {
    counts: Vec<u64>,
}

impl CitationSample {
    /// Ranks arbitrary counts from highest to lowest.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        counts.sort_unstable_by(|a, b| b.cmp(a));
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Number of papers with at least `threshold` citations.
    pub fn count_at_least(&self, threshold: f64) -> usize {
        self.counts.partition_point(|&c| c as f64 >= threshold)
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `index` under `master`: the `index`-th output of a
/// SplitMix64 stream started at `master`.
pub fn replicate_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Draws one series with the default discretization.
pub fn sample_series(spec: SeriesSpec, seed: u64) -> CitationSample {
    sample_series_with(spec, seed, Discretization::default())
}

pub fn sample_series_with(
    spec: SeriesSpec,
    seed: u64,
    discretization: Discretization,
) -> CitationSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mu, sigma) = (spec.params().mu(), spec.params().sigma());
    let counts = (0..spec.n_papers())
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            discretization.apply((mu + sigma * z).exp())
        })
        .collect();
    CitationSample::from_counts(counts)
}

/// Largest `h` such that `h` papers have at least `h` citations each.
pub fn empirical_h(sample: &CitationSample) -> u64 {
    // counts are nonincreasing and ranks increasing, so the predicate
    // "count at rank r >= r" holds on a prefix
    sample
        .counts
        .iter()
        .enumerate()
        .take_while(|(i, &c)| c >= (*i as u64 + 1))
        .count() as u64
}

/// Papers with at least `x` citations, for each threshold `x`.
pub fn empirical_counts(sample: &CitationSample, thresholds: &ThresholdSet) -> Vec<(f64, u64)> {
    thresholds
        .values()
        .iter()
        .map(|&x| (x, sample.count_at_least(x) as u64))
        .collect()
}

/// Replicate-averaged indicators of one series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateSummary {
    pub spec: SeriesSpec,
    pub replicates: usize,
    pub seed: u64,
    pub discretization: Discretization,
    pub h_mean: f64,
    /// Sample standard deviation of h across replicates; zero for one replicate.
    pub h_stddev: f64,
    pub sum_citations_mean: f64,
    /// Mean number of papers at or above each threshold.
    pub counts_above: ThresholdMap,
}

struct ReplicateMetrics {
    h: u64,
    total: u64,
    counts: Vec<u64>,
}

fn replicate_metrics(
    spec: SeriesSpec,
    thresholds: &ThresholdSet,
    seed: u64,
    discretization: Discretization,
) -> ReplicateMetrics {
    let sample = sample_series_with(spec, seed, discretization);
    ReplicateMetrics {
        h: empirical_h(&sample),
        total: sample.total(),
        counts: thresholds
            .values()
            .iter()
            .map(|&x| sample.count_at_least(x) as u64)
            .collect(),
    }
}

/// Averages indicators over `replicates` independently seeded series.
pub fn run_replicates(
    spec: SeriesSpec,
    replicates: usize,
    thresholds: &ThresholdSet,
    seed: u64,
) -> Result<ReplicateSummary> {
    run_replicates_with(
        spec,
        replicates,
        thresholds,
        seed,
        Discretization::default(),
    )
}

pub fn run_replicates_with(
    spec: SeriesSpec,
    replicates: usize,
    thresholds: &ThresholdSet,
    seed: u64,
    discretization: Discretization,
) -> Result<ReplicateSummary> {
    if replicates == 0 {
        return Err(Error::InvalidArgument("need at least one replicate".into()));
    }
    let per_replicate: Vec<ReplicateMetrics> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| replicate_metrics(spec, thresholds, replicate_seed(seed, i), discretization))
        .collect();

    // Integer accumulators make the reduction exact; order does not matter.
    let r = replicates as f64;
    let h_sum: u64 = per_replicate.iter().map(|m| m.h).sum();
    let h_mean = h_sum as f64 / r;
    let h_stddev = if replicates > 1 {
        let ss: f64 = per_replicate
            .iter()
            .map(|m| (m.h as f64 - h_mean).powi(2))
            .sum();
        (ss / (r - 1.0)).sqrt()
    } else {
        0.0
    };
    let total: u128 = per_replicate.iter().map(|m| m.total as u128).sum();
    let mut count_sums = vec![0u64; thresholds.len()];
    for m in &per_replicate {
        for (acc, c) in count_sums.iter_mut().zip(&m.counts) {
            *acc += c;
        }
    }
    let mut sums = count_sums.into_iter();
    let counts_above = ThresholdMap::from_fn(thresholds, |_| sums.next().unwrap_or(0) as f64 / r);

    Ok(ReplicateSummary {
        spec,
        replicates,
        seed,
        discretization,
        h_mean,
        h_stddev,
        sum_citations_mean: total as f64 / r,
        counts_above,
    })
}

/// Mean of the k-th largest count over replicates, for k = 1..=N: the
/// replicate-averaged rank/frequency curve.
pub fn mean_rank_frequency(spec: SeriesSpec, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    if replicates == 0 {
        return Err(Error::InvalidArgument("need at least one replicate".into()));
    }
    let n = spec.n_papers() as usize;
    let sums = (0..replicates as u64)
        .into_par_iter()
        .map(|i| sample_series(spec, replicate_seed(seed, i)).counts)
        .map(|counts| counts.into_iter().map(u128::from).collect::<Vec<_>>())
        .reduce(
            || vec![0u128; n],
            |mut acc, v| {
                acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
                acc
            },
        );
    Ok(sums
        .into_iter()
        .map(|s| s as f64 / replicates as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::citation_model::{mean_citations, survival_probability};

    fn series1() -> SeriesSpec {
        SeriesSpec::from_parts(2.7, 1.2, 500).unwrap()
    }

    #[test]
    fn discretize_examples() {
        assert_eq!(discretize(0.4), 0);
        assert_eq!(discretize(7.5), 8);
        assert_eq!(discretize(12.49), 12);
        assert_eq!(Discretization::Floor.apply(12.99), 12);
        assert_eq!(Discretization::Floor.apply(0.99), 0);
    }

    #[test]
    fn empirical_h_examples() {
        assert_eq!(
            empirical_h(&CitationSample::from_counts(vec![5, 4, 3, 2, 1])),
            3
        );
        assert_eq!(empirical_h(&CitationSample::from_counts(vec![0, 0, 0])), 0);
        assert_eq!(empirical_h(&CitationSample::from_counts(vec![10, 10])), 2);
        assert_eq!(empirical_h(&CitationSample::from_counts(vec![])), 0);
        assert_eq!(empirical_h(&CitationSample::from_counts(vec![1, 3, 2])), 2);
    }

    #[test]
    fn empirical_counts_examples() {
        let s = CitationSample::from_counts(vec![5, 4, 3, 2, 1]);
        let five = ThresholdSet::new(vec![5.0]).unwrap();
        assert_eq!(empirical_counts(&s, &five), vec![(5.0, 1)]);
        let two = ThresholdSet::new(vec![1.0, 3.0]).unwrap();
        assert_eq!(empirical_counts(&s, &two), vec![(1.0, 5), (3.0, 3)]);
        let fractional = ThresholdSet::new(vec![2.5]).unwrap();
        assert_eq!(empirical_counts(&s, &fractional), vec![(2.5, 3)]);
    }

    #[test]
    fn sample_is_deterministic_sorted_and_sized() {
        let a = sample_series(series1(), 42);
        let b = sample_series(series1(), 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 500);
        assert!(a.counts().windows(2).all(|w| w[0] >= w[1]));
        assert_ne!(a, sample_series(series1(), 43));
    }

    #[test]
    fn sample_mean_tracks_lognormal_mean() {
        let spec = series1();
        let mean_of_means: f64 = (0..100)
            .map(|seed| sample_series(spec, seed).total() as f64 / 500.0)
            .sum::<f64>()
            / 100.0;
        let want = mean_citations(spec.params());
        assert!(
            (mean_of_means / want - 1.0).abs() < 0.02,
            "{mean_of_means} vs {want}"
        );
    }

    #[test]
    fn single_sample_fraction_above_five() {
        let s = sample_series(series1(), 7);
        let frac = s.count_at_least(5.0) as f64 / 500.0;
        assert!((frac - 0.8183).abs() < 0.03, "{frac}");
    }

    #[test]
    fn replicate_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> =
            (0..10_000).map(|i| replicate_seed(1, i)).collect();
        assert_eq!(seeds.len(), 10_000);
        assert_ne!(replicate_seed(1, 0), replicate_seed(2, 0));
    }

    #[test]
    fn single_replicate_equals_single_sample() {
        let spec = series1();
        let thresholds = ThresholdSet::standard();
        let summary = run_replicates(spec, 1, &thresholds, 99).unwrap();
        let sample = sample_series(spec, replicate_seed(99, 0));
        assert_eq!(summary.h_mean, empirical_h(&sample) as f64);
        assert_eq!(summary.h_stddev, 0.0);
        assert_eq!(summary.sum_citations_mean, sample.total() as f64);
        for ((_, mean), (_, count)) in summary
            .counts_above
            .iter()
            .zip(empirical_counts(&sample, &thresholds))
        {
            assert_eq!(mean, count as f64);
        }
        assert!(run_replicates(spec, 0, &thresholds, 1).is_err());
    }

    #[test]
    fn summary_independent_of_thread_count() {
        let spec = SeriesSpec::from_parts(2.1, 1.1, 300).unwrap();
        let thresholds = ThresholdSet::standard();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_replicates(spec, 200, &thresholds, 5).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(3));
        assert_eq!(one, run(8));
    }

    #[test]
    fn series13_h_mean() {
        let spec = SeriesSpec::from_parts(2.1, 1.1, 200).unwrap();
        let summary = run_replicates(spec, 10_000, &ThresholdSet::standard(), 1).unwrap();
        assert!((summary.h_mean - 27.0).abs() <= 1.0, "{}", summary.h_mean);
        let counts: Vec<f64> = summary.counts_above.values().collect();
        assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        assert!(counts.iter().all(|&c| (0.0..=200.0).contains(&c)));
    }

    #[test]
    fn series1_totals_and_top_counts() {
        let summary = run_replicates(series1(), 10_000, &ThresholdSet::standard(), 3).unwrap();
        assert!((summary.sum_citations_mean / 15280.0 - 1.0).abs() < 0.01);
        // round-half-up counts x >= 100 for draws >= 99.5, the continuous
        // tail at 99.5 is 28.3 papers
        let at100 = summary.counts_above.get(100.0).unwrap();
        assert!((at100 - 28.1).abs() < 0.5, "{at100}");
    }

    #[test]
    fn floor_matches_survival_and_round_matches_mean() {
        let spec = SeriesSpec::from_parts(1.7, 1.0, 500).unwrap();
        let thresholds = ThresholdSet::new(vec![5.0, 10.0, 20.0]).unwrap();
        let floor =
            run_replicates_with(spec, 2000, &thresholds, 11, Discretization::Floor).unwrap();
        let round =
            run_replicates_with(spec, 2000, &thresholds, 11, Discretization::RoundHalfUp).unwrap();
        for (x, mean) in floor.counts_above.iter() {
            let p = survival_probability(x, spec.params()).unwrap();
            assert!((mean / 500.0 - p).abs() < 0.005, "floor at {x}");
        }
        for (x, mean) in round.counts_above.iter() {
            let shifted = survival_probability(x - 0.5, spec.params()).unwrap();
            assert!((mean / 500.0 - shifted).abs() < 0.005, "round at {x}");
        }
        let analytic = mean_citations(spec.params()) * 500.0;
        assert!((round.sum_citations_mean - analytic).abs() / 500.0 < 0.1);
        assert!((floor.sum_citations_mean - analytic).abs() / 500.0 > 0.4);
    }

    #[test]
    fn rank_frequency_curve() {
        let spec = SeriesSpec::from_parts(1.5, 0.9, 50).unwrap();
        let curve = mean_rank_frequency(spec, 40, 8).unwrap();
        assert_eq!(curve.len(), 50);
        assert!(curve.windows(2).all(|w| w[0] >= w[1]));
        let direct: u64 = (0..40)
            .map(|i| sample_series(spec, replicate_seed(8, i)).counts()[0])
            .sum();
        assert!((curve[0] - direct as f64 / 40.0).abs() < 1e-12);
    }
}
