mod common;

use hindex_core::citation_model::{expected_exceeding, survival_probability};
use hindex_core::hindex::{solve_h, DEFAULT_TOLERANCE};
use hindex_core::montecarlo::{empirical_counts, empirical_h, CitationSample};
use hindex_core::special::{erf, student_t_two_sided};
use hindex_core::stats::{fit_power_law, pearson};
use hindex_core::{LognormalParams, SeriesSpec, ThresholdSet};
use proptest::prelude::*;

fn h_of(mu: f64, sigma: f64, n: u64) -> f64 {
    solve_h(
        SeriesSpec::from_parts(mu, sigma, n).unwrap(),
        DEFAULT_TOLERANCE,
    )
    .unwrap()
    .h_continuous
}

proptest! {
    #[test]
    fn erf_odd_and_monotone(x in -8.0f64..8.0, dx in 1e-6f64..1.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x + dx) >= erf(x));
        prop_assert!(erf(x).abs() <= 1.0);
    }

    #[test]
    fn survival_monotone(mu in -2.0f64..5.0, sigma in 0.1f64..3.0, c in 1e-3f64..1e4, k in 1.0001f64..10.0) {
        let params = LognormalParams::new(mu, sigma).unwrap();
        let a = survival_probability(c, params).unwrap();
        let b = survival_probability(c * k, params).unwrap();
        prop_assert!(b <= a);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn exceedance_is_n_times_survival(mu in 0.0f64..4.0, sigma in 0.2f64..2.0, n in 1u64..100_000, c in 0.01f64..1e3) {
        let spec = SeriesSpec::from_parts(mu, sigma, n).unwrap();
        prop_assert_eq!(
            expected_exceeding(c, spec).unwrap(),
            n as f64 * survival_probability(c, spec.params()).unwrap()
        );
    }

    #[test]
    fn fixed_point_residual(mu in 0.5f64..3.5, sigma in 0.5f64..1.5, n in 1u64..50_000) {
        let spec = SeriesSpec::from_parts(mu, sigma, n).unwrap();
        let sol = solve_h(spec, DEFAULT_TOLERANCE).unwrap();
        let f = expected_exceeding(sol.h_continuous, spec).unwrap();
        prop_assert!((f - sol.h_continuous).abs() <= DEFAULT_TOLERANCE);
        prop_assert!(sol.h_continuous > 0.0 && sol.h_continuous < n as f64);
        prop_assert_eq!(sol.h_reported, sol.h_continuous.round() as u64);
    }

    #[test]
    fn h_nondecreasing_in_mu(mu in 0.5f64..3.0, dmu in 0.01f64..1.0, sigma in 0.5f64..1.5, n in 10u64..10_000) {
        prop_assert!(h_of(mu + dmu, sigma, n) >= h_of(mu, sigma, n));
    }

    #[test]
    fn wider_sigma_raises_h_above_median(mu in 0.5f64..3.0, sigma in 0.5f64..1.5, ds in 0.01f64..0.5, n in 10u64..10_000) {
        let h = h_of(mu, sigma, n);
        if h.ln() > mu {
            prop_assert!(h_of(mu, sigma + ds, n) >= h);
        }
    }

    #[test]
    fn empirical_h_bounds_and_permutation(mut counts in proptest::collection::vec(0u64..200, 0..300), seed in any::<u64>()) {
        let h = empirical_h(&CitationSample::from_counts(counts.clone()));
        prop_assert!(h as usize <= counts.len());
        prop_assert!(h <= counts.iter().copied().max().unwrap_or(0));
        // a deterministic shuffle
        let len = counts.len();
        let mut state = seed;
        for i in (1..len).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            counts.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(empirical_h(&CitationSample::from_counts(counts.clone())), h);
        // Hirsch definition by brute force
        let brute = (0..=len as u64).filter(|&k| counts.iter().filter(|&&c| c >= k).count() as u64 >= k).max().unwrap();
        prop_assert_eq!(h, brute);
    }

    #[test]
    fn empirical_counts_nonincreasing(counts in proptest::collection::vec(0u64..1000, 1..200)) {
        let sample = CitationSample::from_counts(counts);
        let got = empirical_counts(&sample, &ThresholdSet::extended());
        prop_assert!(got.windows(2).all(|w| w[0].1 >= w[1].1));
    }

    #[test]
    fn pearson_affine_invariance(
        pts in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 3..40),
        scale in 0.1f64..10.0,
        shift in -50.0f64..50.0,
    ) {
        let Ok(base) = pearson(&pts) else { return Ok(()) };
        let pos: Vec<_> = pts.iter().map(|&(x, y)| (x, scale * y + shift)).collect();
        let neg: Vec<_> = pts.iter().map(|&(x, y)| (-scale * x + shift, y)).collect();
        prop_assert!((pearson(&pos).unwrap().r - base.r).abs() < 1e-9);
        prop_assert!((pearson(&neg).unwrap().r + base.r).abs() < 1e-9);
    }

    #[test]
    fn power_law_fit_inverts_exact_data(a in 0.1f64..50.0, b in -1.5f64..1.5, n in 3usize..30) {
        let pts: Vec<_> = (1..=n).map(|i| i as f64 * 1.7).map(|x| (x, a * x.powf(b))).collect();
        let fit = fit_power_law(&pts).unwrap();
        prop_assert!((fit.amplitude - a).abs() < 1e-9 * a.max(1.0));
        prop_assert!((fit.exponent - b).abs() < 1e-9);
        prop_assert!((fit.r_squared - 1.0).abs() < 1e-9 || b.abs() < 1e-6);
    }

    #[test]
    fn student_t_tail_matches_statrs(t in 0.0f64..8.0, df in 1.0f64..60.0) {
        use statrs::distribution::{ContinuousCDF, StudentsT};
        let dist = StudentsT::new(0.0, 1.0, df).unwrap();
        let oracle = 2.0 * dist.sf(t);
        let ours = student_t_two_sided(t, df);
        prop_assert!((ours - oracle).abs() < 1e-10, "{} vs {}", ours, oracle);
    }
}

#[test]
fn h_strictly_increasing_in_n() {
    for row in hindex_core::indicators::PUBLISHED_TABLE.iter() {
        let hs: Vec<f64> = [50, 100, 200, 500, 1000, 5000]
            .iter()
            .map(|&n| h_of(row.mu, row.sigma, n))
            .collect();
        assert!(hs.windows(2).all(|w| w[0] < w[1]), "series {}", row.series);
    }
}

#[test]
fn h_sublinear_in_n() {
    for row in hindex_core::indicators::PUBLISHED_TABLE.iter() {
        for n in [100, 200, 500, 1000, 5000] {
            let (h1, h2) = (h_of(row.mu, row.sigma, n), h_of(row.mu, row.sigma, 2 * n));
            assert!(h2 < 2.0 * h1, "series {} at N={n}", row.series);
        }
    }
}
