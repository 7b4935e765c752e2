//! Per-series indicators and the 30-series lognormal study.

use rayon::prelude::*;
use serde::Serialize;

use crate::citation_model::{
    expected_exceeding, survival_probability, total_citations, SeriesSpec, ThresholdMap,
    ThresholdSet,
};
use crate::error::{Error, Result};
use crate::hindex::{solve_h, DEFAULT_TOLERANCE};
use crate::montecarlo::{run_replicates_with, Discretization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricsSource {
    Analytic,
    Simulated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesMetrics {
    pub spec: SeriesSpec,
    pub sum_citations: f64,
    pub h: f64,
    pub h_over_n: f64,
    /// Σ(c)/N.
    pub mean_citations: f64,
    pub p_at: ThresholdMap,
    pub f_at: ThresholdMap,
    pub source: MetricsSource,
}

impl SeriesMetrics {
    fn assemble(
        spec: SeriesSpec,
        sum_citations: f64,
        h: f64,
        f_at: ThresholdMap,
        p_at: ThresholdMap,
        source: MetricsSource,
    ) -> Self {
        let n = spec.n_papers() as f64;
        Self {
            spec,
            sum_citations,
            h,
            h_over_n: h / n,
            mean_citations: sum_citations / n,
            p_at,
            f_at,
            source,
        }
    }

    /// Survival probability at `threshold`; thresholds outside the stored
    /// set are evaluated on demand for analytic rows.
    pub fn probability(&self, threshold: f64) -> Result<f64> {
        match (self.p_at.get(threshold), self.source) {
            (Some(p), _) => Ok(p),
            (None, MetricsSource::Analytic) => survival_probability(threshold, self.spec.params()),
            (None, MetricsSource::Simulated) => Err(Error::UnknownThreshold(threshold)),
        }
    }

    /// Expected (analytic) or mean (simulated) number of papers at or above
    /// `threshold`.
    pub fn count(&self, threshold: f64) -> Result<f64> {
        match (self.f_at.get(threshold), self.source) {
            (Some(f), _) => Ok(f),
            (None, MetricsSource::Analytic) => expected_exceeding(threshold, self.spec),
            (None, MetricsSource::Simulated) => Err(Error::UnknownThreshold(threshold)),
        }
    }
}

/// Indicators from the closed-form model; h is the continuous fixed point.
pub fn metrics_analytic(spec: SeriesSpec, thresholds: &ThresholdSet) -> Result<SeriesMetrics> {
    let h = solve_h(spec, DEFAULT_TOLERANCE)?.h_continuous;
    let p_at = ThresholdMap::from_fn(thresholds, |x| {
        survival_probability(x, spec.params()).expect("thresholds are positive")
    });
    let n = spec.n_papers() as f64;
    let f_at = ThresholdMap::from_fn(thresholds, |x| n * p_at.get(x).unwrap_or(f64::NAN));
    Ok(SeriesMetrics::assemble(
        spec,
        total_citations(spec),
        h,
        f_at,
        p_at,
        MetricsSource::Analytic,
    ))
}

/// Indicators averaged over synthetic replicates with the default
/// discretization.
pub fn metrics_simulated(
    spec: SeriesSpec,
    thresholds: &ThresholdSet,
    replicates: usize,
    seed: u64,
) -> Result<SeriesMetrics> {
    metrics_simulated_with(
        spec,
        thresholds,
        replicates,
        seed,
        Discretization::default(),
    )
}

pub fn metrics_simulated_with(
    spec: SeriesSpec,
    thresholds: &ThresholdSet,
    replicates: usize,
    seed: u64,
    discretization: Discretization,
) -> Result<SeriesMetrics> {
    let summary = run_replicates_with(spec, replicates, thresholds, seed, discretization)?;
    let n = spec.n_papers() as f64;
    let f_at = summary.counts_above.clone();
    let p_at = ThresholdMap::from_fn(thresholds, |x| f_at.get(x).unwrap_or(f64::NAN) / n);
    Ok(SeriesMetrics::assemble(
        spec,
        summary.sum_citations_mean,
        summary.h_mean,
        f_at,
        p_at,
        MetricsSource::Simulated,
    ))
}

/// One row of the published study table. Probability cells are kept as
/// printed so their precision is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub series: usize,
    pub mu: f64,
    pub sigma: f64,
    pub n_papers: u64,
    pub sum_citations: u64,
    pub h: u64,
    /// P(5), P(10), P(20), P(50), P(100), P(500).
    pub probabilities: [&'static str; 6],
}

impl PublishedRow {
    pub fn spec(&self) -> SeriesSpec {
        SeriesSpec::from_parts(self.mu, self.sigma, self.n_papers)
            .expect("published parameters are valid")
    }
}

macro_rules! rows {
    ($( $s:literal $mu:literal $sigma:literal $n:literal $sum:literal $h:literal [$($p:literal)*] )*) => {
        [$( PublishedRow {
            series: $s, mu: $mu, sigma: $sigma, n_papers: $n, sum_citations: $sum, h: $h,
            probabilities: [$($p),*],
        } ),*]
    };
}

/// The 30 lognormal series of the study, as published.
pub const PUBLISHED_TABLE: [PublishedRow; 30] = rows! {
    1  2.7 1.2 500   15280  61  ["0.8183" "0.6297" "0.4027" "0.1562" "0.0562" "1.70E-03"]
    2  2.7 1.2 5000  152891 145 ["0.8183" "0.6297" "0.4027" "0.1562" "0.0562" "1.70E-03"]
    3  2.7 1.2 1000  30593  80  ["0.8183" "0.6297" "0.4027" "0.1562" "0.0562" "1.70E-03"]
    4  2.5 1.2 500   12510  54  ["0.7710" "0.5653" "0.3398" "0.1197" "0.0397" "9.82E-04"]
    5  2.5 1.1 4000  89223  104 ["0.7909" "0.5712" "0.3261" "0.0996" "0.0278" "3.67E-04"]
    6  2.4 1.1 500   10093  47  ["0.7638" "0.5353" "0.2941" "0.0846" "0.0225" "2.62E-04"]
    7  2.3 1.1 5000  91364  97  ["0.7349" "0.4991" "0.2635" "0.0714" "0.0181" "1.86E-04"]
    8  2.3 1.1 1000  18266  57  ["0.7349" "0.4991" "0.2635" "0.0714" "0.0181" "1.86E-04"]
    9  2.3 1.1 10000 182662 120 ["0.7349" "0.4991" "0.2635" "0.0714" "0.0181" "1.86E-04"]
    10 2.2 1.1 3000  49564  77  ["0.7043" "0.4628" "0.2347" "0.0598" "0.0144" "1.31E-04"]
    11 2.2 1.1 10000 165273 112 ["0.7043" "0.4628" "0.2347" "0.0598" "0.0144" "1.31E-04"]
    12 2.1 1.1 500   7483   39  ["0.6722" "0.4269" "0.2077" "0.0497" "0.0114" "9.18E-05"]
    13 2.1 1.1 200   2987   27  ["0.6722" "0.4269" "0.2077" "0.0497" "0.0114" "9.18E-05"]
    14 2.1 1.1 5000  74771  84  ["0.6722" "0.4269" "0.2077" "0.0497" "0.0114" "9.18E-05"]
    15 2.1 1.1 10000 149541 104 ["0.6722" "0.4269" "0.2077" "0.0497" "0.0114" "9.18E-05"]
    16 2.1 1.0 3000  40390  63  ["0.6881" "0.4197" "0.1852" "0.0350" "0.0061" "1.94E-05"]
    17 2.0 1.0 3000  36545  58  ["0.6519" "0.3811" "0.1597" "0.0279" "0.0046" "1.25E-05"]
    18 1.9 1.0 5000  55116  63  ["0.6143" "0.3436" "0.1366" "0.0221" "0.0034" "7.99E-06"]
    19 1.9 1.0 1000  11026  39  ["0.6143" "0.3436" "0.1366" "0.0221" "0.0034" "7.99E-06"]
    20 1.7 1.0 500   4520   27  ["0.5361" "0.2734" "0.0975" "0.0135" "1.84E-03" "3.17E-06"]
    21 1.7 1.0 300   2709   23  ["0.5361" "0.2734" "0.0975" "0.0135" "1.84E-03" "3.17E-06"]
    22 1.7 1.0 100   901    15  ["0.5361" "0.2734" "0.0975" "0.0135" "1.84E-03" "3.17E-06"]
    23 1.7 0.9 2000  16411  36  ["0.5401" "0.2516" "0.0750" "0.0070" "6.23E-04" "2.63E-07"]
    24 1.5 0.9 500   3360   21  ["0.4516" "0.1863" "0.0483" "0.0037" "2.80E-04" "8.10E-08"]
    25 1.5 0.9 200   1344   16  ["0.4516" "0.1863" "0.0483" "0.0037" "2.80E-04" "8.10E-08"]
    26 1.5 0.9 2000  13437  31  ["0.4516" "0.1863" "0.0483" "0.0037" "2.80E-04" "8.10E-08"]
    27 1.5 0.9 3000  20161  35  ["0.4516" "0.1863" "0.0483" "0.0037" "2.80E-04" "8.10E-08"]
    28 1.4 0.9 1000  6084   24  ["0.4080" "0.1580" "0.0381" "0.0026" "1.85E-04" "4.41E-08"]
    29 1.3 0.8 1000  5060   19  ["0.3495" "0.1051" "0.0170" "5.47E-04" "1.80E-05" "4.04E-10"]
    30 1.3 0.8 5000  25272  28  ["0.3495" "0.1051" "0.0170" "5.47E-04" "1.80E-05" "4.04E-10"]
};

/// Study rows in series order; series numbers are 1-based positions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyTable {
    pub thresholds: ThresholdSet,
    pub rows: Vec<SeriesMetrics>,
}

impl StudyTable {
    /// Analytic metrics for arbitrary specs. Rows are computed in parallel
    /// and keep input order.
    pub fn analytic(specs: &[SeriesSpec], thresholds: ThresholdSet) -> Result<Self> {
        let rows = specs
            .par_iter()
            .map(|&spec| metrics_analytic(spec, &thresholds))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { thresholds, rows })
    }

    /// Simulated metrics. Series `i` (1-based) uses master seed
    /// `seed + i - 1`, so a row does not depend on which other rows are run.
    pub fn simulated(
        specs: &[SeriesSpec],
        thresholds: ThresholdSet,
        replicates: usize,
        seed: u64,
        discretization: Discretization,
    ) -> Result<Self> {
        let rows = specs
            .iter()
            .enumerate()
            .map(|(i, &spec)| {
                metrics_simulated_with(
                    spec,
                    &thresholds,
                    replicates,
                    seed.wrapping_add(i as u64),
                    discretization,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { thresholds, rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// The parameter triples of the 30 published series.
pub fn study_specs() -> Vec<SeriesSpec> {
    PUBLISHED_TABLE.iter().map(PublishedRow::spec).collect()
}

/// The 30-series study with analytic metrics at thresholds
/// 5, 10, 20, 50, 100 and 500.
pub fn default_study() -> StudyTable {
    StudyTable::analytic(&study_specs(), ThresholdSet::standard()).expect("published study solves")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Indicator {
    H,
    HOverN,
    SumC,
    SumCOverN,
}

impl Indicator {
    pub fn name(self) -> &'static str {
        match self {
            Indicator::H => "h",
            Indicator::HOverN => "h_over_n",
            Indicator::SumC => "sum_c",
            Indicator::SumCOverN => "sum_c_over_n",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "h" => Ok(Indicator::H),
            "h_over_n" => Ok(Indicator::HOverN),
            "sum_c" => Ok(Indicator::SumC),
            "sum_c_over_n" => Ok(Indicator::SumCOverN),
            other => Err(Error::InvalidArgument(format!(
                "unknown indicator `{other}`"
            ))),
        }
    }

    pub fn value(self, row: &SeriesMetrics) -> f64 {
        match self {
            Indicator::H => row.h,
            Indicator::HOverN => row.h_over_n,
            Indicator::SumC => row.sum_citations,
            Indicator::SumCOverN => row.mean_citations,
        }
    }
}

/// What goes on the horizontal axis of a scatter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum XAxis {
    /// F(x), papers at or above the threshold.
    Counts(f64),
    /// P(x), the survival probability at the threshold.
    Probabilities(f64),
    Indicator(Indicator),
}

impl XAxis {
    pub fn value(self, row: &SeriesMetrics) -> Result<f64> {
        match self {
            XAxis::Counts(x) => row.count(x),
            XAxis::Probabilities(x) => row.probability(x),
            XAxis::Indicator(ind) => Ok(ind.value(row)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatterPoint {
    pub series: usize,
    pub x: f64,
    pub y: f64,
}

/// One point per row, in series order.
pub fn scatter_dataset(table: &StudyTable, y: Indicator, x: XAxis) -> Result<Vec<ScatterPoint>> {
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Ok(ScatterPoint {
                series: i + 1,
                x: x.value(row)?,
                y: y.value(row),
            })
        })
        .collect()
}

/// `(x, y)` pairs of a scatter, for feeding the fitters.
pub fn xy(points: &[ScatterPoint]) -> Vec<(f64, f64)> {
    points.iter().map(|p| (p.x, p.y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(series: usize) -> SeriesSpec {
        PUBLISHED_TABLE[series - 1].spec()
    }

    #[test]
    fn series1_metrics() {
        let m = metrics_analytic(row(1), &ThresholdSet::standard()).unwrap();
        assert!((m.sum_citations / 15283.0 - 1.0).abs() < 1e-3);
        assert_eq!(m.h.round(), 61.0);
        assert!((m.p_at.get(5.0).unwrap() - 0.8183).abs() < 5e-5);
        assert!((m.p_at.get(500.0).unwrap() / 1.70e-3 - 1.0).abs() < 0.01);
        assert_eq!(m.source, MetricsSource::Analytic);
        assert_eq!(m.h_over_n, m.h / 500.0);
        assert_eq!(m.mean_citations, m.sum_citations / 500.0);
    }

    #[test]
    fn series29_metrics() {
        let m = metrics_analytic(row(29), &ThresholdSet::standard()).unwrap();
        assert!((m.p_at.get(20.0).unwrap() - 0.0170).abs() < 5e-5);
        assert!((m.p_at.get(500.0).unwrap() / 4.04e-10 - 1.0).abs() < 0.01);
        assert_eq!(m.h.round(), 19.0);
    }

    #[test]
    fn shared_distribution_rows() {
        let t = ThresholdSet::standard();
        let small = metrics_analytic(row(12), &t).unwrap();
        let large = metrics_analytic(row(14), &t).unwrap();
        assert_eq!(small.p_at, large.p_at);
        for ((_, a), (_, b)) in small.f_at.iter().zip(large.f_at.iter()) {
            assert!((b - 10.0 * a).abs() < 1e-9 * b);
        }
    }

    #[test]
    fn study_shape() {
        let study = default_study();
        assert_eq!(study.len(), 30);
        assert_eq!(
            study.rows[8].spec,
            SeriesSpec::from_parts(2.3, 1.1, 10_000).unwrap()
        );
        assert_eq!(
            study.rows[21].spec,
            SeriesSpec::from_parts(1.7, 1.0, 100).unwrap()
        );
        assert_eq!(study.rows[21].h.round(), 15.0);
        for r in &study.rows {
            for ((_, p), (_, f)) in r.p_at.iter().zip(r.f_at.iter()) {
                assert!((f / r.spec.n_papers() as f64 - p).abs() <= 1e-15);
            }
            let ps: Vec<f64> = r.p_at.values().collect();
            assert!(ps.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn scatter_h_against_f100() {
        let study = default_study();
        let pts = scatter_dataset(&study, Indicator::H, XAxis::Counts(100.0)).unwrap();
        assert_eq!(pts.len(), 30);
        assert_eq!(
            pts.iter().map(|p| p.series).collect::<Vec<_>>(),
            (1..=30).collect::<Vec<_>>()
        );
        let h: Vec<f64> = [13, 20, 30].iter().map(|&s| pts[s - 1].y.round()).collect();
        assert_eq!(h, vec![27.0, 27.0, 28.0]);
    }

    #[test]
    fn scatter_on_demand_threshold() {
        let study = default_study();
        let pts =
            scatter_dataset(&study, Indicator::SumCOverN, XAxis::Probabilities(30.0)).unwrap();
        let direct = survival_probability(30.0, study.rows[0].spec.params()).unwrap();
        assert_eq!(pts[0].x, direct);
    }

    #[test]
    fn scatter_single_row() {
        let table = StudyTable::analytic(&[row(5)], ThresholdSet::standard()).unwrap();
        let pts = scatter_dataset(&table, Indicator::SumC, XAxis::Counts(50.0)).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].y, table.rows[0].sum_citations);
        assert_eq!(pts[0].x, table.rows[0].f_at.get(50.0).unwrap());
    }

    #[test]
    fn simulated_rows_reject_unknown_thresholds() {
        let table = StudyTable::simulated(
            &[row(22)],
            ThresholdSet::standard(),
            3,
            1,
            Discretization::default(),
        )
        .unwrap();
        assert!(scatter_dataset(&table, Indicator::H, XAxis::Probabilities(30.0)).is_err());
        assert!(scatter_dataset(&table, Indicator::H, XAxis::Probabilities(20.0)).is_ok());
    }

    #[test]
    fn simulated_metrics() {
        let m = metrics_simulated(row(20), &ThresholdSet::standard(), 10_000, 4).unwrap();
        assert!((m.h - 27.0).abs() <= 1.0, "{}", m.h);
        assert_eq!(m.source, MetricsSource::Simulated);
        let a = metrics_simulated(row(22), &ThresholdSet::standard(), 1, 9).unwrap();
        let b = metrics_simulated(row(22), &ThresholdSet::standard(), 1, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn simulated_series2_total() {
        let m = metrics_simulated(row(2), &ThresholdSet::standard(), 10_000, 2).unwrap();
        assert!((m.sum_citations / 152_891.0 - 1.0).abs() < 0.01);
    }

    #[test]
    fn indicator_names_round_trip() {
        for ind in [
            Indicator::H,
            Indicator::HOverN,
            Indicator::SumC,
            Indicator::SumCOverN,
        ] {
            assert_eq!(Indicator::parse(ind.name()).unwrap(), ind);
        }
        assert!(Indicator::parse("g_index").is_err());
    }
}
