use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hindex_core::hindex::DEFAULT_CURVE_POINTS;
use hindex_core::indicators::Indicator;
use hindex_core::{LognormalParams, SeriesSpec, ThresholdSet};

use hindex_cli::commands::{
    self, DiscretizeRule, FitKind, Mode, PowerMethod, Table1Options, DEFAULT_REPLICATES,
    DEFAULT_SEED,
};
use hindex_cli::format::{OutputFormat, ProbabilityStyle};
use hindex_cli::verify::{self, VerifyOptions};

/// Lognormal citation model: h index, the study table and indicator datasets.
#[derive(Debug, Parser)]
#[command(name = "hindex", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SimulationArgs {
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    replicates: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// How a continuous draw becomes a citation count.
    #[arg(long, value_enum, default_value_t = DiscretizeRule::Round)]
    discretize: DiscretizeRule,
}

#[derive(Debug, Args)]
struct ProbabilityArgs {
    /// Decimal places for probability columns.
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

impl ProbabilityArgs {
    fn style(&self) -> ProbabilityStyle {
        ProbabilityStyle {
            decimals: self.precision,
            ..ProbabilityStyle::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The 30-series study table.
    Table1 {
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
        #[command(flatten)]
        sim: SimulationArgs,
        #[command(flatten)]
        probability: ProbabilityArgs,
    },
    /// h against the number of papers for fixed mu and sigma.
    Hcurve {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 10)]
        n_min: u64,
        #[arg(long, default_value_t = 10_000)]
        n_max: u64,
        #[arg(long, default_value_t = DEFAULT_CURVE_POINTS)]
        points: usize,
        /// Add the large-N approximation column.
        #[arg(long)]
        asymptotic: bool,
        /// Extra paper counts to include, comma separated.
        #[arg(long, value_delimiter = ',')]
        at: Vec<u64>,
    },
    /// Per-series points behind the indicator scatter plots.
    Scatter {
        #[arg(long)]
        y: String,
        /// `counts`, `probabilities` or an indicator name.
        #[arg(long)]
        x: String,
        #[arg(long)]
        threshold: Option<f64>,
        /// Divide both axes by N.
        #[arg(long)]
        normalized: bool,
    },
    /// Power-law or linear fit over the study series.
    Fit {
        #[arg(long, value_enum)]
        kind: FitKind,
        #[arg(long, value_enum, default_value_t = PowerMethod::Nonlinear)]
        method: PowerMethod,
        #[arg(long)]
        y: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        normalized: bool,
    },
    /// Replicate-averaged indicators for one series.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        n: u64,
        /// Thresholds, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 20.0, 50.0, 100.0, 500.0])]
        threshold: Vec<f64>,
        /// Emit the mean rank/frequency curve instead of the summary.
        #[arg(long)]
        rank_frequency: bool,
        #[command(flatten)]
        sim: SimulationArgs,
        #[command(flatten)]
        probability: ProbabilityArgs,
    },
    /// Recompute the published values and report each check.
    Verify {
        /// Run only checks whose id contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        sim: SimulationArgs,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        anyhow::ensure!(threads >= 1, "--threads must be at least 1");
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    let out = cli.out.as_ref();
    let table = match cli.command {
        Command::Table1 {
            mode,
            sim,
            probability,
        } => {
            if mode == Mode::Simulate {
                eprintln!("# seed={} replicates={}", sim.seed, sim.replicates);
            }
            commands::table1(&Table1Options {
                mode,
                replicates: sim.replicates,
                seed: sim.seed,
                discretization: sim.discretize.into(),
                style: probability.style(),
            })?
        }
        Command::Hcurve {
            mu,
            sigma,
            n_min,
            n_max,
            points,
            asymptotic,
            at,
        } => commands::hcurve(
            LognormalParams::new(mu, sigma)?,
            n_min,
            n_max,
            points,
            asymptotic,
            &at,
        )?,
        Command::Scatter {
            y,
            x,
            threshold,
            normalized,
        } => commands::scatter(
            Indicator::parse(&y)?,
            commands::parse_x_axis(&x, threshold)?,
            normalized,
        )?,
        Command::Fit {
            kind,
            method,
            y,
            x,
            threshold,
            normalized,
        } => commands::fit(
            kind,
            method,
            Indicator::parse(&y)?,
            commands::parse_x_axis(&x, threshold)?,
            normalized,
        )?,
        Command::Simulate {
            mu,
            sigma,
            n,
            threshold,
            rank_frequency,
            sim,
            probability,
        } => {
            let spec = SeriesSpec::from_parts(mu, sigma, n)?;
            eprintln!("# seed={} replicates={}", sim.seed, sim.replicates);
            if rank_frequency {
                commands::rank_frequency(spec, sim.replicates, sim.seed)?
            } else {
                let thresholds = ThresholdSet::new(threshold)?;
                commands::simulate(
                    spec,
                    sim.replicates,
                    &thresholds,
                    sim.seed,
                    sim.discretize.into(),
                    probability.style(),
                )?
            }
        }
        Command::Verify { filter, sim } => {
            let results = verify::run(&VerifyOptions {
                replicates: sim.replicates,
                seed: sim.seed,
                discretization: sim.discretize.into(),
                filter,
            });
            anyhow::ensure!(!results.is_empty(), "no check matches the filter");
            eprint!("{}", verify::summary_lines(&results));
            let mut detail = serde_json::to_string_pretty(&results)?;
            detail.push('\n');
            emit(out, &detail)?;
            let ok = results.iter().all(|r| r.passed);
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
    };
    emit(out, &table.render(cli.format))?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
