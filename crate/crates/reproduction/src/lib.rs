//! Reference values and tolerances for the acceptance suite in
//! `tests/acceptance.rs`. Every number a criterion compares against lives
//! here so the bounds cannot drift between runs or reviewers.

/// Absolute tolerance on a probability printed with four decimals.
pub const DECIMAL_CELL_TOL: f64 = 5e-5;
/// Relative tolerance on a probability printed in scientific notation.
pub const SCIENTIFIC_CELL_REL_TOL: f64 = 0.01;

pub const H_MAX_DEVIATION: u64 = 1;
pub const H_MIN_EXACT: usize = 27;

pub const SUM_CITATIONS_REL_TOL: f64 = 0.01;

/// (mu, sigma, h at N = 100, h at N = 200).
pub const GROWTH_SPOT_VALUES: [(f64, f64, f64, f64); 3] = [
    (2.7, 1.2, 29.0, 41.0),
    (2.1, 1.1, 20.0, 28.0),
    (1.3, 0.8, 10.0, 13.0),
];
pub const GROWTH_SPOT_TOL: f64 = 1.0;

pub const ASYMPTOTIC_MIN_PAPERS: u64 = 1000;
pub const ASYMPTOTIC_REL_TOL: f64 = 0.15;

/// (threshold, amplitude, amplitude tol, exponent, exponent tol, min R²).
pub const POWER_FITS: [(f64, f64, f64, f64, f64, f64); 2] = [
    (50.0, 14.6, 1.5, 0.325, 0.03, 0.96),
    (100.0, 27.4, 2.7, 0.282, 0.03, 0.95),
];

pub const LINE_INTERCEPT: (f64, f64) = (4.9, 0.5);
pub const LINE_SLOPE: (f64, f64) = (88.7, 9.0);

pub const PEARSON_R20: (f64, f64) = (0.988, 0.010);
/// Base-10 log of the p-value and the allowed distance in orders of magnitude.
pub const PEARSON_LOG10_P20: (f64, f64) = (-24.0, 2.0);
pub const PEARSON_R30: (f64, f64) = (0.998, 0.005);

pub const CITATION_EXPONENT: (f64, f64) = (0.42, 0.05);

pub const MC_REPLICATES: usize = 10_000;
pub const MC_SEED: u64 = 20_200_212;
pub const MC_H_TOL: f64 = 2.0;
pub const MC_P_TOL: f64 = 0.005;
pub const MC_THRESHOLDS: [f64; 4] = [5.0, 10.0, 20.0, 50.0];

pub const DECORRELATION_MAX_R2: f64 = 0.5;
pub const POWER_MIN_R2: f64 = 0.95;

/// Series number, mu, sigma, N, sum of citations, h, then the printed
/// P(x) cells for x = 5, 10, 20, 50, 100, 500.
pub type PublishedRow = (usize, f64, f64, u64, u64, u64, [&'static str; 6]);

/// The published study table as printed.
#[rustfmt::skip]
pub const PUBLISHED: [PublishedRow; 30] = [
    (1, 2.7, 1.2, 500, 15280, 61, ["0.8183", "0.6297", "0.4027", "0.1562", "0.0562", "1.70E-03"]),
    (2, 2.7, 1.2, 5000, 152891, 145, ["0.8183", "0.6297", "0.4027", "0.1562", "0.0562", "1.70E-03"]),
    (3, 2.7, 1.2, 1000, 30593, 80, ["0.8183", "0.6297", "0.4027", "0.1562", "0.0562", "1.70E-03"]),
    (4, 2.5, 1.2, 500, 12510, 54, ["0.7710", "0.5653", "0.3398", "0.1197", "0.0397", "9.82E-04"]),
    (5, 2.5, 1.1, 4000, 89223, 104, ["0.7909", "0.5712", "0.3261", "0.0996", "0.0278", "3.67E-04"]),
    (6, 2.4, 1.1, 500, 10093, 47, ["0.7638", "0.5353", "0.2941", "0.0846", "0.0225", "2.62E-04"]),
    (7, 2.3, 1.1, 5000, 91364, 97, ["0.7349", "0.4991", "0.2635", "0.0714", "0.0181", "1.86E-04"]),
    (8, 2.3, 1.1, 1000, 18266, 57, ["0.7349", "0.4991", "0.2635", "0.0714", "0.0181", "1.86E-04"]),
    (9, 2.3, 1.1, 10000, 182662, 120, ["0.7349", "0.4991", "0.2635", "0.0714", "0.0181", "1.86E-04"]),
    (10, 2.2, 1.1, 3000, 49564, 77, ["0.7043", "0.4628", "0.2347", "0.0598", "0.0144", "1.31E-04"]),
    (11, 2.2, 1.1, 10000, 165273, 112, ["0.7043", "0.4628", "0.2347", "0.0598", "0.0144", "1.31E-04"]),
    (12, 2.1, 1.1, 500, 7483, 39, ["0.6722", "0.4269", "0.2077", "0.0497", "0.0114", "9.18E-05"]),
    (13, 2.1, 1.1, 200, 2987, 27, ["0.6722", "0.4269", "0.2077", "0.0497", "0.0114", "9.18E-05"]),
    (14, 2.1, 1.1, 5000, 74771, 84, ["0.6722", "0.4269", "0.2077", "0.0497", "0.0114", "9.18E-05"]),
    (15, 2.1, 1.1, 10000, 149541, 104, ["0.6722", "0.4269", "0.2077", "0.0497", "0.0114", "9.18E-05"]),
    (16, 2.1, 1.0, 3000, 40390, 63, ["0.6881", "0.4197", "0.1852", "0.0350", "0.0061", "1.94E-05"]),
    (17, 2.0, 1.0, 3000, 36545, 58, ["0.6519", "0.3811", "0.1597", "0.0279", "0.0046", "1.25E-05"]),
    (18, 1.9, 1.0, 5000, 55116, 63, ["0.6143", "0.3436", "0.1366", "0.0221", "0.0034", "7.99E-06"]),
    (19, 1.9, 1.0, 1000, 11026, 39, ["0.6143", "0.3436", "0.1366", "0.0221", "0.0034", "7.99E-06"]),
    (20, 1.7, 1.0, 500, 4520, 27, ["0.5361", "0.2734", "0.0975", "0.0135", "1.84E-03", "3.17E-06"]),
    (21, 1.7, 1.0, 300, 2709, 23, ["0.5361", "0.2734", "0.0975", "0.0135", "1.84E-03", "3.17E-06"]),
    (22, 1.7, 1.0, 100, 901, 15, ["0.5361", "0.2734", "0.0975", "0.0135", "1.84E-03", "3.17E-06"]),
    (23, 1.7, 0.9, 2000, 16411, 36, ["0.5401", "0.2516", "0.0750", "0.0070", "6.23E-04", "2.63E-07"]),
    (24, 1.5, 0.9, 500, 3360, 21, ["0.4516", "0.1863", "0.0483", "0.0037", "2.80E-04", "8.10E-08"]),
    (25, 1.5, 0.9, 200, 1344, 16, ["0.4516", "0.1863", "0.0483", "0.0037", "2.80E-04", "8.10E-08"]),
    (26, 1.5, 0.9, 2000, 13437, 31, ["0.4516", "0.1863", "0.0483", "0.0037", "2.80E-04", "8.10E-08"]),
    (27, 1.5, 0.9, 3000, 20161, 35, ["0.4516", "0.1863", "0.0483", "0.0037", "2.80E-04", "8.10E-08"]),
    (28, 1.4, 0.9, 1000, 6084, 24, ["0.4080", "0.1580", "0.0381", "0.0026", "1.85E-04", "4.41E-08"]),
    (29, 1.3, 0.8, 1000, 5060, 19, ["0.3495", "0.1051", "0.0170", "5.47E-04", "1.80E-05", "4.04E-10"]),
    (30, 1.3, 0.8, 5000, 25272, 28, ["0.3495", "0.1051", "0.0170", "5.47E-04", "1.80E-05", "4.04E-10"]),
];

/// Thresholds of the probability columns in [`PUBLISHED`].
pub const PUBLISHED_THRESHOLDS: [f64; 6] = [5.0, 10.0, 20.0, 50.0, 100.0, 500.0];
