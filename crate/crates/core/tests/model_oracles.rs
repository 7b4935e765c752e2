#![allow(clippy::excessive_precision)]

mod common;

use common::{integrate, integrate_to_infinity, study_specs};
use hindex_core::citation_model::{
    expected_exceeding, mean_citations, number_density, pdf, survival_probability,
};
use hindex_core::special::{erf, erfc};
use hindex_core::LognormalParams;

fn total_mass(params: LognormalParams) -> f64 {
    let f = |c: f64| {
        if c > 0.0 {
            pdf(c, params).unwrap()
        } else {
            0.0
        }
    };
    integrate(f, 0.0, 1.0) + integrate_to_infinity(f, 1.0)
}

#[test]
fn quadrature_oracle_self_check() {
    let v = integrate_to_infinity(|x| (-x).exp(), 0.0);
    assert!((v - 1.0).abs() < 1e-10);
    let v = integrate(|x| x.sin(), 0.0, std::f64::consts::PI);
    assert!((v - 2.0).abs() < 1e-12);
}

#[test]
fn pdf_integrates_to_one() {
    for (mu, sigma) in [(2.7, 1.2), (1.3, 0.8), (2.1, 1.1), (0.0, 0.3)] {
        let mass = total_mass(LognormalParams::new(mu, sigma).unwrap());
        assert!((mass - 1.0).abs() < 1e-6, "mu={mu} sigma={sigma}: {mass}");
    }
}

#[test]
fn exceedance_matches_integrated_density_for_every_study_series() {
    for spec in study_specs() {
        for c in [1.0, 5.0, 20.0, 100.0] {
            let closed = expected_exceeding(c, spec).unwrap();
            let quad = integrate_to_infinity(|t| number_density(t, spec).unwrap(), c);
            assert!(
                ((quad - closed) / closed).abs() < 1e-6,
                "{spec:?} at c={c}: quadrature {quad} vs closed form {closed}"
            );
        }
        let c = 3.0;
        assert_eq!(
            expected_exceeding(c, spec).unwrap(),
            spec.n_papers() as f64 * survival_probability(c, spec.params()).unwrap()
        );
    }
}

#[test]
fn mean_matches_first_moment() {
    for (mu, sigma, approx) in [(2.7, 1.2, 30.569), (1.3, 0.8, 5.053)] {
        let params = LognormalParams::new(mu, sigma).unwrap();
        let f = |c: f64| {
            if c > 0.0 {
                c * pdf(c, params).unwrap()
            } else {
                0.0
            }
        };
        let quad = integrate(f, 0.0, 1.0) + integrate_to_infinity(f, 1.0);
        let closed = mean_citations(params);
        assert!(((quad - closed) / closed).abs() < 1e-6);
        assert!((closed - approx).abs() < 1e-3);
    }
}

#[test]
fn number_density_counts_integrate_to_series_size() {
    let spec = hindex_core::SeriesSpec::from_parts(2.7, 1.2, 500).unwrap();
    let direct = number_density(10.0, spec).unwrap();
    assert!((direct - 500.0 * pdf(10.0, spec.params()).unwrap()).abs() < 1e-15);
    // papers with 9.5..10.5 citations, by quadrature, is close to the density at 10
    let band = integrate(|t| number_density(t, spec).unwrap(), 9.5, 10.5);
    assert!((band - direct).abs() / direct < 1e-2);
}

#[test]
fn erf_against_reference_values() {
    // 30-digit reference values
    let reference = [
        (0.05, 0.056_371_977_797_016_627),
        (0.3, 0.328_626_759_459_127_4),
        (0.5, 0.520_499_877_813_046_5),
        (0.9, 0.796_908_212_422_832_1),
        (1.3, 0.934_007_944_940_652_4),
        (1.9, 0.992_790_429_235_257_5),
        (2.0, 0.995_322_265_018_952_7),
        (2.1, 0.997_020_533_343_667),
        (2.7, 0.999_865_667_260_059_5),
        (3.5, 0.999_999_256_901_627_7),
        (4.5, 0.999_999_999_803_384),
    ];
    for (x, want) in reference {
        assert!((erf(x) - want).abs() < 1e-15, "x={x}");
    }
    // erfc(x) = 1 - erf(x) where both are well conditioned
    let mut x = -3.0;
    while x < 1.0 {
        assert!((erfc(x) - (1.0 - erf(x))).abs() < 2e-16 * 4.0);
        x += 0.0137;
    }
}
