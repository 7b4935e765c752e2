//! The subcommands, as functions from options to a [`Table`].

use anyhow::{bail, ensure, Context, Result};
use hindex_core::hindex::{geometric_grid, h_curve_at};
use hindex_core::indicators::{
    default_study, scatter_dataset, study_specs, xy, Indicator, StudyTable, XAxis,
};
use hindex_core::montecarlo::{mean_rank_frequency, run_replicates_with};
use hindex_core::stats::{fit_linear, fit_power_law_with, PowerLawMethod};
use hindex_core::{Discretization, LognormalParams, SeriesSpec, ThresholdSet};

use crate::format::{Cell, ProbabilityStyle, Table};

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_200_212;

pub const DEFAULT_REPLICATES: usize = 10_000;

/// Thresholds accepted by `scatter` and `fit`.
pub const SCATTER_THRESHOLDS: [f64; 7] = [5.0, 10.0, 20.0, 30.0, 50.0, 100.0, 500.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Mode {
    #[default]
    Analytic,
    Simulate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum DiscretizeRule {
    #[default]
    Round,
    Floor,
}

impl From<DiscretizeRule> for Discretization {
    fn from(rule: DiscretizeRule) -> Self {
        match rule {
            DiscretizeRule::Round => Discretization::RoundHalfUp,
            DiscretizeRule::Floor => Discretization::Floor,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Table1Options {
    pub mode: Mode,
    pub replicates: usize,
    pub seed: u64,
    pub discretization: Discretization,
    pub style: ProbabilityStyle,
}

impl Default for Table1Options {
    fn default() -> Self {
        Self {
            mode: Mode::Analytic,
            replicates: DEFAULT_REPLICATES,
            seed: DEFAULT_SEED,
            discretization: Discretization::default(),
            style: ProbabilityStyle::default(),
        }
    }
}

fn threshold_label(prefix: &str, x: f64) -> String {
    format!("{prefix}({x})")
}

/// The 30-series study table: parameters, Σ(c), h and P(x) at the six
/// standard thresholds.
pub fn table1(opts: &Table1Options) -> Result<Table> {
    let thresholds = ThresholdSet::standard();
    let specs = study_specs();
    let study = match opts.mode {
        Mode::Analytic => StudyTable::analytic(&specs, thresholds.clone())?,
        Mode::Simulate => {
            ensure!(
                opts.replicates >= 1,
                "simulate mode needs at least one replicate"
            );
            StudyTable::simulated(
                &specs,
                thresholds.clone(),
                opts.replicates,
                opts.seed,
                opts.discretization,
            )?
        }
    };
    let mut headers: Vec<String> = ["series", "mu", "sigma", "N", "sum_c", "h"]
        .map(String::from)
        .to_vec();
    headers.extend(thresholds.values().iter().map(|&x| threshold_label("P", x)));
    let mut table = Table::new(headers);
    for (i, row) in study.rows.iter().enumerate() {
        let params = row.spec.params();
        let mut cells = vec![
            Cell::Int(i as i64 + 1),
            Cell::fixed(params.mu(), 1),
            Cell::fixed(params.sigma(), 1),
            Cell::Int(row.spec.n_papers() as i64),
            Cell::Int(row.sum_citations.round() as i64),
            Cell::Int(row.h.round() as i64),
        ];
        cells.extend(row.p_at.values().map(|p| Cell::probability(p, opts.style)));
        table.push(cells);
    }
    Ok(table)
}

/// h against N, on a geometric grid plus any explicitly requested N.
pub fn hcurve(
    params: LognormalParams,
    n_min: u64,
    n_max: u64,
    points: usize,
    with_asymptotic: bool,
    extra: &[u64],
) -> Result<Table> {
    let mut grid = geometric_grid(n_min, n_max, points)?;
    grid.extend_from_slice(extra);
    ensure!(
        extra.iter().all(|&n| n >= 1),
        "paper counts must be positive"
    );
    let curve = h_curve_at(params, &grid, with_asymptotic)?;
    let mut headers = vec!["N", "h_exact"];
    if with_asymptotic {
        headers.push("h_asymptotic");
    }
    let mut table = Table::new(headers);
    for p in &curve.points {
        let mut cells = vec![Cell::Int(p.n_papers as i64), Cell::float(p.h)];
        if with_asymptotic {
            cells.push(
                p.h_asymptotic
                    .map(Cell::float)
                    .unwrap_or_else(|| Cell::Text(String::new())),
            );
        }
        table.push(cells);
    }
    Ok(table)
}

pub fn check_threshold(threshold: f64) -> Result<f64> {
    if SCATTER_THRESHOLDS.contains(&threshold) {
        Ok(threshold)
    } else {
        bail!("threshold {threshold} is not one of {SCATTER_THRESHOLDS:?}")
    }
}

/// Reads an x-axis name: `counts` (F(x)), `probabilities` (P(x)) or an
/// indicator name. The first two need a threshold.
pub fn parse_x_axis(name: &str, threshold: Option<f64>) -> Result<XAxis> {
    match name {
        "counts" | "probabilities" => {
            let x =
                check_threshold(threshold.context("`--threshold` is required for this x axis")?)?;
            Ok(if name == "counts" {
                XAxis::Counts(x)
            } else {
                XAxis::Probabilities(x)
            })
        }
        other => Ok(XAxis::Indicator(Indicator::parse(other)?)),
    }
}

fn axis_points(
    y: Indicator,
    x: XAxis,
    normalized: bool,
) -> Result<(StudyTable, Vec<hindex_core::indicators::ScatterPoint>)> {
    let study = default_study();
    let mut points = scatter_dataset(&study, y, x)?;
    if normalized {
        for (p, row) in points.iter_mut().zip(&study.rows) {
            let n = row.spec.n_papers() as f64;
            p.x /= n;
            p.y /= n;
        }
    }
    Ok((study, points))
}

/// One (x, y) row per study series. `normalized` divides both axes by N.
pub fn scatter(y: Indicator, x: XAxis, normalized: bool) -> Result<Table> {
    let (study, points) = axis_points(y, x, normalized)?;
    let mut table = Table::new(["series", "N", "x", "y"]);
    for (p, row) in points.iter().zip(&study.rows) {
        table.push(vec![
            Cell::Int(p.series as i64),
            Cell::Int(row.spec.n_papers() as i64),
            Cell::float(p.x),
            Cell::float(p.y),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FitKind {
    Power,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum PowerMethod {
    #[default]
    Nonlinear,
    Loglog,
}

impl From<PowerMethod> for PowerLawMethod {
    fn from(m: PowerMethod) -> Self {
        match m {
            PowerMethod::Nonlinear => PowerLawMethod::Nonlinear,
            PowerMethod::Loglog => PowerLawMethod::LogLog,
        }
    }
}

/// Regression of an indicator on an axis over the study series.
pub fn fit(
    kind: FitKind,
    method: PowerMethod,
    y: Indicator,
    x: XAxis,
    normalized: bool,
) -> Result<Table> {
    let (_, points) = axis_points(y, x, normalized)?;
    let data = xy(&points);
    let table = match kind {
        FitKind::Power => {
            let f = fit_power_law_with(&data, method.into())?;
            let mut t = Table::new([
                "kind",
                "method",
                "n_points",
                "amplitude",
                "exponent",
                "r_squared",
            ]);
            t.push(vec![
                Cell::Text("power".into()),
                Cell::Text(match method {
                    PowerMethod::Nonlinear => "nonlinear".into(),
                    PowerMethod::Loglog => "loglog".into(),
                }),
                Cell::Int(f.n_points as i64),
                Cell::float(f.amplitude),
                Cell::float(f.exponent),
                Cell::float(f.r_squared),
            ]);
            t
        }
        FitKind::Linear => {
            let f = fit_linear(&data)?;
            let mut t = Table::new([
                "kind",
                "n_points",
                "intercept",
                "slope",
                "r",
                "r_squared",
                "p_value",
                "log10_p_value",
            ]);
            t.push(vec![
                Cell::Text("linear".into()),
                Cell::Int(f.n_points as i64),
                Cell::float(f.intercept),
                Cell::float(f.slope),
                Cell::float(f.pearson_r),
                Cell::float(f.r_squared),
                Cell::float(f.p_value),
                Cell::float(f.ln_p_value / std::f64::consts::LN_10),
            ]);
            t
        }
    };
    Ok(table)
}

/// Replicate-averaged metrics of one series.
pub fn simulate(
    spec: SeriesSpec,
    replicates: usize,
    thresholds: &ThresholdSet,
    seed: u64,
    discretization: Discretization,
    style: ProbabilityStyle,
) -> Result<Table> {
    let summary = run_replicates_with(spec, replicates, thresholds, seed, discretization)?;
    let n = spec.n_papers() as f64;
    let mut headers: Vec<String> = [
        "mu",
        "sigma",
        "N",
        "replicates",
        "seed",
        "h_mean",
        "h_stddev",
        "sum_c_mean",
    ]
    .map(String::from)
    .to_vec();
    headers.extend(thresholds.values().iter().map(|&x| threshold_label("F", x)));
    headers.extend(thresholds.values().iter().map(|&x| threshold_label("P", x)));
    let mut cells = vec![
        Cell::float(spec.params().mu()),
        Cell::float(spec.params().sigma()),
        Cell::Int(spec.n_papers() as i64),
        Cell::Int(replicates as i64),
        Cell::Text(seed.to_string()),
        Cell::float(summary.h_mean),
        Cell::float(summary.h_stddev),
        Cell::float(summary.sum_citations_mean),
    ];
    cells.extend(summary.counts_above.values().map(Cell::float));
    cells.extend(
        summary
            .counts_above
            .values()
            .map(|f| Cell::probability(f / n, style)),
    );
    let mut table = Table::new(headers);
    table.push(cells);
    Ok(table)
}

/// Replicate-averaged rank/frequency curve of one series.
pub fn rank_frequency(spec: SeriesSpec, replicates: usize, seed: u64) -> Result<Table> {
    let curve = mean_rank_frequency(spec, replicates, seed)?;
    let mut table = Table::new(["rank", "mean_citations"]);
    for (i, c) in curve.into_iter().enumerate() {
        table.push(vec![Cell::Int(i as i64 + 1), Cell::float(c)]);
    }
    Ok(table)
}
