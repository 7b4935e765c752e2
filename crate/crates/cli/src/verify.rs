//! Reproduction checks run by `hindex verify`.
//!
//! Each check recomputes a published quantity from the model and compares
//! it with the printed value at a fixed tolerance.

use anyhow::Result;
use hindex_core::hindex::{h_asymptotic, h_curve_at, solve_h, DEFAULT_TOLERANCE};
use hindex_core::indicators::{
    default_study, scatter_dataset, xy, Indicator, StudyTable, XAxis, PUBLISHED_TABLE,
};
use hindex_core::montecarlo::run_replicates_with;
use hindex_core::stats::{fit_linear, fit_power_law_with, pearson, PowerLawMethod};
use hindex_core::{Discretization, LognormalParams, ThresholdSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{table1, Mode, Table1Options, DEFAULT_REPLICATES, DEFAULT_SEED};
use crate::format::OutputFormat;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub criterion: u8,
    pub passed: bool,
    pub summary: String,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub replicates: usize,
    pub seed: u64,
    pub discretization: Discretization,
    /// Runs only checks whose id contains this string.
    pub filter: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            replicates: DEFAULT_REPLICATES,
            seed: DEFAULT_SEED,
            discretization: Discretization::default(),
            filter: None,
        }
    }
}

type CheckFn = fn(&Context) -> Result<CheckResult>;

struct Context {
    study: StudyTable,
    opts: VerifyOptions,
}

pub const CHECK_IDS: [&str; 12] = [
    "table1-probabilities",
    "table1-h",
    "table1-sum-citations",
    "growth-spot-values",
    "asymptotic-agreement",
    "power-law-fits",
    "mean-citation-line",
    "pearson-correlations",
    "citation-power-exponent",
    "monte-carlo-agreement",
    "decorrelation",
    "determinism",
];

const CHECKS: [CheckFn; 12] = [
    table1_probabilities,
    table1_h,
    table1_sum_citations,
    growth_spot_values,
    asymptotic_agreement,
    power_law_fits,
    mean_citation_line,
    pearson_correlations,
    citation_power_exponent,
    monte_carlo_agreement,
    decorrelation,
    determinism,
];

/// Runs the selected checks in order. A check that errors is reported as
/// failed with the error message.
pub fn run(opts: &VerifyOptions) -> Vec<CheckResult> {
    let ctx = Context {
        study: default_study(),
        opts: opts.clone(),
    };
    CHECK_IDS
        .iter()
        .zip(CHECKS)
        .enumerate()
        .filter(|(_, (id, _))| opts.filter.as_deref().is_none_or(|f| id.contains(f)))
        .map(|(i, (&id, check))| {
            check(&ctx).unwrap_or_else(|e| CheckResult {
                id,
                criterion: i as u8 + 1,
                passed: false,
                summary: format!("error: {e:#}"),
                detail: Value::Null,
            })
        })
        .collect()
}

pub fn summary_lines(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "[{mark}] {:>2} {:<24} {}\n",
            r.criterion, r.id, r.summary
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", results.len()));
    out
}

fn result(
    id: &'static str,
    criterion: u8,
    passed: bool,
    summary: String,
    detail: Value,
) -> Result<CheckResult> {
    Ok(CheckResult {
        id,
        criterion,
        passed,
        summary,
        detail,
    })
}

/// Tolerance for a printed probability cell: half a unit in the last place
/// for decimal cells, 1% relative for scientific ones.
fn cell_matches(printed: &str, value: f64) -> bool {
    let target: f64 = printed.parse().expect("published cell parses");
    if printed.contains('E') {
        ((value - target) / target).abs() <= 0.01
    } else {
        (value - target).abs() <= 5e-5
    }
}

fn table1_probabilities(ctx: &Context) -> Result<CheckResult> {
    let thresholds = ThresholdSet::standard();
    let mut mismatches = Vec::new();
    for (row, published) in ctx.study.rows.iter().zip(&PUBLISHED_TABLE) {
        for (&x, printed) in thresholds.values().iter().zip(published.probabilities) {
            let p = row.probability(x)?;
            if !cell_matches(printed, p) {
                mismatches.push(
                    json!({"series": published.series, "x": x, "printed": printed, "computed": p}),
                );
            }
        }
    }
    let n = mismatches.len();
    result(
        "table1-probabilities",
        1,
        n == 0,
        format!("{} of 180 cells match", 180 - n),
        json!({"mismatches": mismatches}),
    )
}

fn table1_h(ctx: &Context) -> Result<CheckResult> {
    let mut exact = 0;
    let mut worst = 0i64;
    let mut rows = Vec::new();
    for (row, published) in ctx.study.rows.iter().zip(&PUBLISHED_TABLE) {
        let h = solve_h(row.spec, DEFAULT_TOLERANCE)?;
        let diff = h.h_reported as i64 - published.h as i64;
        exact += (diff == 0) as usize;
        worst = worst.max(diff.abs());
        rows.push(
            json!({"series": published.series, "printed": published.h, "computed": h.h_continuous}),
        );
    }
    result(
        "table1-h",
        2,
        worst <= 1 && exact >= 27,
        format!("{exact}/30 exact, max deviation {worst}"),
        json!({"rows": rows}),
    )
}

fn table1_sum_citations(ctx: &Context) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for (row, published) in ctx.study.rows.iter().zip(&PUBLISHED_TABLE) {
        let rel = (row.sum_citations - published.sum_citations as f64).abs()
            / published.sum_citations as f64;
        worst = worst.max(rel);
    }
    result(
        "table1-sum-citations",
        3,
        worst <= 0.01,
        format!("max relative deviation {:.3}%", worst * 100.0),
        json!({"max_relative_deviation": worst}),
    )
}

fn growth_spot_values(_: &Context) -> Result<CheckResult> {
    let cases = [
        (2.7, 1.2, 29.0, 41.0),
        (2.1, 1.1, 20.0, 28.0),
        (1.3, 0.8, 10.0, 13.0),
    ];
    let mut passed = true;
    let mut detail = Vec::new();
    let mut parts = Vec::new();
    for (mu, sigma, h100, h200) in cases {
        let curve = h_curve_at(LognormalParams::new(mu, sigma)?, &[100, 200], false)?;
        let a = curve.h_at(100).expect("requested point");
        let b = curve.h_at(200).expect("requested point");
        passed &= (a - h100).abs() <= 1.0 && (b - h200).abs() <= 1.0;
        parts.push(format!("{a:.2}->{b:.2}"));
        detail.push(
            json!({"mu": mu, "sigma": sigma, "h100": a, "h200": b, "expected": [h100, h200]}),
        );
    }
    result(
        "growth-spot-values",
        4,
        passed,
        parts.join(", "),
        json!({"cases": detail}),
    )
}

fn asymptotic_agreement(ctx: &Context) -> Result<CheckResult> {
    let mut worst = (0.0, 0usize);
    let mut detail = Vec::new();
    for (i, row) in ctx.study.rows.iter().enumerate() {
        if row.spec.n_papers() < 1000 {
            continue;
        }
        let rel = (h_asymptotic(row.spec)? - row.h).abs() / row.h;
        if rel > worst.0 {
            worst = (rel, i + 1);
        }
        detail.push(json!({"series": i + 1, "relative_error": rel}));
    }
    result(
        "asymptotic-agreement",
        5,
        worst.0 <= 0.15,
        format!("max relative error {:.3} (series {})", worst.0, worst.1),
        json!({"series": detail}),
    )
}

fn fit_xy(study: &StudyTable, y: Indicator, x: XAxis) -> Result<Vec<(f64, f64)>> {
    Ok(xy(&scatter_dataset(study, y, x)?))
}

fn power_law_fits(ctx: &Context) -> Result<CheckResult> {
    let f50 = fit_power_law_with(
        &fit_xy(&ctx.study, Indicator::H, XAxis::Counts(50.0))?,
        PowerLawMethod::Nonlinear,
    )?;
    let f100 = fit_power_law_with(
        &fit_xy(&ctx.study, Indicator::H, XAxis::Counts(100.0))?,
        PowerLawMethod::Nonlinear,
    )?;
    let ok50 = (f50.amplitude - 14.6).abs() <= 1.5
        && (f50.exponent - 0.325).abs() <= 0.03
        && f50.r_squared >= 0.96;
    let ok100 = (f100.amplitude - 27.4).abs() <= 2.7
        && (f100.exponent - 0.282).abs() <= 0.03
        && f100.r_squared >= 0.95;
    result(
        "power-law-fits",
        6,
        ok50 && ok100,
        format!(
            "F(50): a={:.2} b={:.4} R2={:.3}; F(100): a={:.2} b={:.4} R2={:.3}",
            f50.amplitude,
            f50.exponent,
            f50.r_squared,
            f100.amplitude,
            f100.exponent,
            f100.r_squared
        ),
        json!({"f50": f50, "f100": f100}),
    )
}

fn mean_citation_line(ctx: &Context) -> Result<CheckResult> {
    let fit = fit_linear(&fit_xy(
        &ctx.study,
        Indicator::SumCOverN,
        XAxis::Probabilities(30.0),
    )?)?;
    result(
        "mean-citation-line",
        7,
        (fit.intercept - 4.9).abs() <= 0.5 && (fit.slope - 88.7).abs() <= 9.0,
        format!("intercept {:.3}, slope {:.3}", fit.intercept, fit.slope),
        json!(fit),
    )
}

fn pearson_correlations(ctx: &Context) -> Result<CheckResult> {
    let c20 = pearson(&fit_xy(
        &ctx.study,
        Indicator::SumCOverN,
        XAxis::Probabilities(20.0),
    )?)?;
    let c30 = pearson(&fit_xy(
        &ctx.study,
        Indicator::SumCOverN,
        XAxis::Probabilities(30.0),
    )?)?;
    let log10_p = c20.ln_p_value / std::f64::consts::LN_10;
    let ok = (c20.r - 0.988).abs() <= 0.010
        && (log10_p + 24.0).abs() <= 2.0
        && (c30.r - 0.998).abs() <= 0.005;
    result(
        "pearson-correlations",
        8,
        ok,
        format!(
            "r20={:.4} (log10 p={:.2}), r30={:.4}",
            c20.r, log10_p, c30.r
        ),
        json!({"p20": c20, "p30": c30}),
    )
}

fn citation_power_exponent(ctx: &Context) -> Result<CheckResult> {
    let fit = fit_power_law_with(
        &fit_xy(&ctx.study, Indicator::H, XAxis::Indicator(Indicator::SumC))?,
        PowerLawMethod::Nonlinear,
    )?;
    result(
        "citation-power-exponent",
        9,
        (fit.exponent - 0.42).abs() <= 0.05,
        format!("exponent {:.4}", fit.exponent),
        json!(fit),
    )
}

fn monte_carlo_agreement(ctx: &Context) -> Result<CheckResult> {
    let thresholds = ThresholdSet::new(vec![5.0, 10.0, 20.0, 50.0])?;
    let mut worst_h = (0.0f64, 0usize);
    let mut worst_p = (0.0f64, 0usize, 0.0);
    for (i, row) in ctx.study.rows.iter().enumerate() {
        let seed = ctx.opts.seed.wrapping_add(i as u64);
        let s = run_replicates_with(
            row.spec,
            ctx.opts.replicates,
            &thresholds,
            seed,
            ctx.opts.discretization,
        )?;
        let dh = (s.h_mean - row.h).abs();
        if dh > worst_h.0 {
            worst_h = (dh, i + 1);
        }
        let n = row.spec.n_papers() as f64;
        for (x, count) in s.counts_above.iter() {
            let dp = (count / n - row.probability(x)?).abs();
            if dp > worst_p.0 {
                worst_p = (dp, i + 1, x);
            }
        }
    }
    result(
        "monte-carlo-agreement",
        10,
        worst_h.0 <= 2.0 && worst_p.0 <= 0.005,
        format!(
            "max |dh|={:.3} (series {}), max |dP|={:.4} (series {}, x={})",
            worst_h.0, worst_h.1, worst_p.0, worst_p.1, worst_p.2
        ),
        json!({
            "replicates": ctx.opts.replicates,
            "seed": ctx.opts.seed,
            "max_h_deviation": worst_h.0,
            "max_probability_deviation": worst_p.0,
        }),
    )
}

fn decorrelation(ctx: &Context) -> Result<CheckResult> {
    let linear = fit_linear(&fit_xy(
        &ctx.study,
        Indicator::HOverN,
        XAxis::Probabilities(100.0),
    )?)?;
    let power = fit_power_law_with(
        &fit_xy(&ctx.study, Indicator::H, XAxis::Counts(100.0))?,
        PowerLawMethod::Nonlinear,
    )?;
    let loglog = fit_power_law_with(
        &fit_xy(&ctx.study, Indicator::H, XAxis::Counts(100.0))?,
        PowerLawMethod::LogLog,
    )?;
    result(
        "decorrelation",
        11,
        linear.r_squared <= 0.5 && power.r_squared >= 0.95,
        format!(
            "h/N vs P(100) R2={:.3}; h vs F(100) power R2={:.3} (log-space {:.3})",
            linear.r_squared, power.r_squared, loglog.r_squared
        ),
        json!({"linear": linear, "power": power, "loglog": loglog}),
    )
}

fn determinism(ctx: &Context) -> Result<CheckResult> {
    let opts = Table1Options {
        mode: Mode::Simulate,
        replicates: 20,
        seed: ctx.opts.seed,
        discretization: ctx.opts.discretization,
        ..Default::default()
    };
    let render = |threads: usize| -> Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        Ok(pool.install(|| table1(&opts))?.render(OutputFormat::Csv))
    };
    let a = render(1)?;
    let b = render(1)?;
    let c = render(4)?;
    result(
        "determinism",
        12,
        a == b && a == c,
        format!(
            "repeat identical: {}, 1 vs 4 threads identical: {}",
            a == b,
            a == c
        ),
        json!({"bytes": a.len()}),
    )
}
