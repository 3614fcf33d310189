//! `rae` — config-driven robust amplitude estimation experiments.
//!
//! Subcommands mirror the pipeline stages: `sample` draws outcome datasets,
//! `infer` runs maximum-likelihood estimation on an existing dataset,
//! `sweep-lmax` and `bias-study` trace estimate quality against the largest
//! layer count, `compare-runtime` pits enhanced sampling against standard
//! sampling at equal circuit time, and `fisher-scan` maps the information
//! landscape that guides layer selection.
//!
//! Exit code 0 on success; on failure a single machine-parsable line
//! `error: <message>` goes to stderr and the exit code is 1.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use rae_core::config::ExperimentConfig;
use rae_core::dataset::DatasetFile;
use rae_core::experiments;

#[derive(Parser)]
#[command(name = "rae", version, about = "Robust amplitude estimation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Experiment config file (flat key = value lines).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Override the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's output path (default: stdout).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw parity outcomes for every configured layer and write the dataset.
    Sample(ConfigArgs),
    /// Run maximum-likelihood estimation trials on an existing dataset file.
    Infer {
        #[command(flatten)]
        config: ConfigArgs,
        /// Dataset file produced by `sample`.
        #[arg(long, value_name = "PATH")]
        data: PathBuf,
    },
    /// Estimate-quality sweep over the largest layer count (CSV).
    SweepLmax {
        #[command(flatten)]
        config: ConfigArgs,
        /// Reuse an existing dataset instead of generating one.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
    },
    /// Equal-runtime comparison of standard vs enhanced sampling (JSON).
    CompareRuntime(ConfigArgs),
    /// Bias/precision trajectory under the configured noise (CSV).
    BiasStudy(ConfigArgs),
    /// Fisher information per unit time across layer counts (CSV).
    FisherScan {
        /// Coarse estimate of the target expectation value, |pi| < 1.
        #[arg(long, allow_hyphen_values = true)]
        pi: f64,
        /// Coarse estimate of the decay rate.
        #[arg(long)]
        lambda: f64,
        /// Smallest layer count.
        #[arg(long, default_value_t = 0)]
        l_min: u32,
        /// Largest layer count.
        #[arg(long, default_value_t = 10)]
        l_max: u32,
        /// Output path (default: stdout).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn load_config(args: &ConfigArgs) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let mut config = ExperimentConfig::parse(&text)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(out) = &args.out {
        config.out = Some(out.display().to_string());
    }
    Ok(config)
}

fn emit(out: Option<&str>, payload: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(Path::new(path), payload)
            .with_context(|| format!("writing {path}"))?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Sample(args) => {
            let config = load_config(&args)?;
            let file = experiments::run_sample(&config)?;
            emit(config.out.as_deref(), &file.to_text())
        }
        Command::Infer { config: args, data } => {
            let config = load_config(&args)?;
            let text = fs::read_to_string(&data)
                .with_context(|| format!("reading dataset {}", data.display()))?;
            let file = DatasetFile::from_text(&text)?;
            let report = experiments::run_infer(&config, &file)?;
            emit(config.out.as_deref(), &report.to_json())
        }
        Command::SweepLmax { config: args, data } => {
            let config = load_config(&args)?;
            let file = match data {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading dataset {}", path.display()))?;
                    Some(DatasetFile::from_text(&text)?)
                }
                None => None,
            };
            let sweep = experiments::run_sweep_lmax(&config, file.as_ref())?;
            emit(config.out.as_deref(), &sweep.to_csv())
        }
        Command::CompareRuntime(args) => {
            let config = load_config(&args)?;
            let report = experiments::run_compare_runtime(&config)?;
            emit(config.out.as_deref(), &report.to_json())
        }
        Command::BiasStudy(args) => {
            let config = load_config(&args)?;
            let sweep = experiments::run_bias_study(&config)?;
            emit(config.out.as_deref(), &sweep.to_csv())
        }
        Command::FisherScan { pi, lambda, l_min, l_max, out } => {
            if l_min > l_max {
                bail!("l_min {l_min} exceeds l_max {l_max}");
            }
            let rows = experiments::run_fisher_scan(pi, lambda, l_min..=l_max)?;
            let path = out.map(|p| p.display().to_string());
            emit(path.as_deref(), &experiments::fisher_scan_csv(&rows))
        }
    }
}

fn main() {
    if let Err(err) = run() {
        let message = format!("{err:#}").replace('\n', " ");
        eprintln!("error: {message}");
        std::process::exit(1);
    }
}
