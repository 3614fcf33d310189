//! Config-driven experiment orchestration.
//!
//! Every operation here is a pure function of (config, seed): datasets,
//! sweeps, comparisons and scans are all reproducible bit-exactly. Trials run
//! in parallel when the `parallel` feature is on; each trial owns a ChaCha
//! stream derived from (seed, purpose, trial index), so parallel execution
//! cannot change any output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits::{build_ansatz, build_enhanced_circuit, EnhancedSamplingSpec};
use crate::config::{Backend, ExperimentConfig};
use crate::dataset::DatasetFile;
use crate::error::{Error, Result};
use crate::inference::{
    mle_estimate, standard_sampling_estimate, trial_statistics, Estimate, GridSpec,
    OutcomeDataset,
};
use crate::noise::{outcome_probability, run_noisy};
use crate::report::{
    fisher_csv, sweep_csv, CompareReport, EstimateReport, FisherRow, SweepRow,
    HARDWARE_REFERENCE,
};
use crate::scheduler::{equal_runtime_budget, Schedule, ScheduleEntry};
use crate::sim::{expectation, sample_parities, Outcome};

/// RNG stream purposes; trial streams add their index to a base.
const STREAM_DATASET: u64 = 1 << 32;
const STREAM_STANDARD_ARM: u64 = 2 << 32;
const STREAM_RAE_ARM: u64 = 3 << 32;
const STREAM_SWEEP_BASE: u64 = 4 << 32;
const STREAM_INFER: u64 = 5 << 32;

/// The ChaCha stream for (seed, stream id): one generator, many independent
/// streams.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Noiseless simulator expectation of the configured observable: the ground
/// truth every statistic is measured against.
pub fn true_expectation(config: &ExperimentConfig) -> Result<f64> {
    let state = build_ansatz(config.theta).simulate()?;
    expectation(&state, &config.observable.pauli_string())
}

fn draw_layer_outcomes(
    config: &ExperimentConfig,
    layers: u32,
    shots: u64,
    pi_true: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Outcome>> {
    match config.backend {
        Backend::Analytic => {
            let p_plus = outcome_probability(&config.noise, pi_true, layers)?;
            Ok((0..shots)
                .map(|_| if rng.gen::<f64>() < p_plus { Outcome::Plus } else { Outcome::Minus })
                .collect())
        }
        Backend::Simulator => {
            let spec = EnhancedSamplingSpec {
                ansatz_theta: config.theta,
                observable: config.observable.pauli_string(),
                layers,
            };
            let circuit = build_enhanced_circuit(&spec);
            let state = run_noisy(&circuit, &spec, &config.noise)?;
            sample_parities(&state, &spec.observable, shots as usize, rng)
        }
    }
}

/// Draw `shots` outcomes for each entry, in entry order, on one RNG stream.
fn generate_dataset(
    config: &ExperimentConfig,
    entries: &[(u32, u64)],
    rng: &mut ChaCha8Rng,
) -> Result<OutcomeDataset> {
    let pi_true = true_expectation(config)?;
    let mut data = OutcomeDataset::new();
    for &(layers, shots) in entries {
        if shots == 0 {
            return Err(Error::Config(format!("layer {layers} configured with zero shots")));
        }
        data.extend_layer(layers, draw_layer_outcomes(config, layers, shots, pi_true, rng)?);
    }
    Ok(data)
}

/// Draw the configured dataset: `shots_per_layer` outcomes for each layer in
/// `config.layers`.
pub fn run_sample(config: &ExperimentConfig) -> Result<DatasetFile> {
    config.validate()?;
    let entries: Vec<(u32, u64)> =
        config.layers.iter().map(|&l| (l, config.shots_per_layer)).collect();
    let mut rng = stream_rng(config.seed, STREAM_DATASET);
    let data = generate_dataset(config, &entries, &mut rng)?;
    Ok(DatasetFile::from_config(config, data))
}

#[cfg(feature = "parallel")]
fn run_trials<F>(n_trials: usize, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(usize) -> Result<Estimate> + Sync + Send,
{
    use rayon::prelude::*;
    (0..n_trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials<F>(n_trials: usize, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(usize) -> Result<Estimate> + Sync + Send,
{
    (0..n_trials).map(f).collect()
}

/// Run `n_trials` maximum-likelihood estimates on an existing dataset and
/// report their statistics against the noiseless simulator truth.
pub fn run_infer(config: &ExperimentConfig, file: &DatasetFile) -> Result<EstimateReport> {
    if config.n_trials < 2 {
        return Err(Error::TooFewTrials(config.n_trials));
    }
    if file.data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let truth_config =
        ExperimentConfig { observable: file.observable, theta: file.theta, ..config.clone() };
    let truth = true_expectation(&truth_config)?;
    let grid = config.grid_spec();
    let m = config.m.min(file.data.total());
    let trials = run_trials(config.n_trials, |t| {
        let mut rng = stream_rng(config.seed, STREAM_INFER + t as u64);
        mle_estimate(&file.data, m, &grid, config.resample_mode, &mut rng)
    })?;
    let stats = trial_statistics(&trials.iter().map(|e| e.pi_hat).collect::<Vec<_>>(), truth)?;
    Ok(EstimateReport::new(
        "rae",
        file.observable.to_string(),
        file.data.layers().collect(),
        m as u64,
        truth,
        config.seed,
        trials,
        &stats,
    ))
}

/// The sweep output: CSV rows plus per-L_max trial estimates (kept so callers
/// can compute medians or other statistics without re-running).
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub trials: Vec<(u32, Vec<Estimate>)>,
    pub truth: f64,
}

impl SweepOutput {
    pub fn to_csv(&self) -> String {
        sweep_csv(&self.rows)
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn sweep_over_lmax(
    config: &ExperimentConfig,
    dataset: &OutcomeDataset,
    truth: f64,
) -> Result<SweepOutput> {
    if config.n_trials < 2 {
        return Err(Error::TooFewTrials(config.n_trials));
    }
    let grid = config.grid_spec();
    let mut rows = Vec::new();
    let mut all_trials = Vec::new();
    for l_max in 1..=config.sweep_l_max {
        let keep: Vec<u32> = (1..=l_max).collect();
        let sub = dataset.restricted_to(&keep);
        for l in &keep {
            if sub.outcomes(*l).is_empty() {
                return Err(Error::Config(format!(
                    "dataset has no outcomes for layer {l} (needed for L_max = {l_max})"
                )));
            }
        }
        // The resample size cannot exceed the available pool for small L_max.
        let m = config.m.min(sub.total());
        let trials = run_trials(config.n_trials, |t| {
            let mut rng =
                stream_rng(config.seed, STREAM_SWEEP_BASE + ((l_max as u64) << 20) + t as u64);
            mle_estimate(&sub, m, &grid, config.resample_mode, &mut rng)
        })?;
        let pi_hats: Vec<f64> = trials.iter().map(|e| e.pi_hat).collect();
        let stats = trial_statistics(&pi_hats, truth)?;
        let mut abs_errs: Vec<f64> = pi_hats.iter().map(|p| (p - truth).abs()).collect();
        rows.push(SweepRow {
            l_max,
            n_trials: stats.n_trials,
            m_resampled: m,
            mean_pi_hat: stats.mean,
            mean_lambda_hat: trials.iter().map(|e| e.lambda_hat).sum::<f64>()
                / trials.len() as f64,
            median_abs_error: median(&mut abs_errs),
            bias: stats.bias,
            bias_se: stats.bias_se,
            sigma: stats.sigma,
            sigma_se: stats.sigma_se,
            rmse: stats.rmse,
            rmse_se: stats.rmse_se,
        });
        all_trials.push((l_max, trials));
    }
    Ok(SweepOutput { rows, trials: all_trials, truth })
}

/// Estimate-quality sweep over L_max: for each L_max in 1..=sweep_l_max, run
/// n_trials estimates using layers 1..=L_max. L_max = 0 is excluded — a
/// single L=0 frequency cannot resolve the two unknowns (Pi, lambda).
///
/// When `dataset` is `None`, a dataset with `shots_per_layer` outcomes for
/// each of layers 1..=sweep_l_max is generated first.
pub fn run_sweep_lmax(
    config: &ExperimentConfig,
    dataset: Option<&DatasetFile>,
) -> Result<SweepOutput> {
    config.validate()?;
    let truth = true_expectation(config)?;
    match dataset {
        Some(file) => sweep_over_lmax(config, &file.data, truth),
        None => {
            let entries: Vec<(u32, u64)> =
                (1..=config.sweep_l_max).map(|l| (l, config.shots_per_layer)).collect();
            let mut rng = stream_rng(config.seed, STREAM_DATASET);
            let data = generate_dataset(config, &entries, &mut rng)?;
            sweep_over_lmax(config, &data, truth)
        }
    }
}

/// Bias/precision trajectory under the configured noise as L_max grows —
/// meaningful with a coherent over-rotation, which only the simulator
/// backend can express.
pub fn run_bias_study(config: &ExperimentConfig) -> Result<SweepOutput> {
    if config.backend != Backend::Simulator {
        return Err(Error::Config(
            "bias-study requires backend = simulator (the analytic sampler cannot express \
             coherent error)"
                .into(),
        ));
    }
    run_sweep_lmax(config, None)
}

/// The schedule used by the equal-runtime comparison: explicit `rae_shots`
/// when configured, otherwise [`equal_runtime_budget`].
pub fn comparison_schedule(config: &ExperimentConfig) -> Result<Schedule> {
    match &config.rae_shots {
        Some(shots) => Schedule::new(
            config
                .rae_layers
                .iter()
                .zip(shots.iter())
                .map(|(&layers, &shots)| ScheduleEntry { layers, shots })
                .collect(),
        ),
        None => equal_runtime_budget(config.baseline_shots, &config.rae_layers),
    }
}

/// Equal-runtime comparison of standard sampling against enhanced sampling.
///
/// Standard arm: n_trials independent draws of `baseline_shots` L=0 outcomes;
/// the estimate is the clamped sample mean (decay fixed to zero in inference,
/// as in plain prepare-and-measure estimation).
///
/// Enhanced arm: the budget converts `baseline_shots` depth-1 shots into M
/// schedule samples (M = 1000 for the default 12875 over layers {1,5,6,7}).
/// Each trial resamples M outcomes from a shared per-layer reservoir of
/// `shots_per_layer` outcomes and runs the grid MLE over (Pi, lambda), with
/// the nuisance grid bounded by [`ExperimentConfig::compare_grid_spec`].
/// With `rae_fresh_data = true` each trial instead draws a fresh
/// schedule-sized dataset.
pub fn run_compare_runtime(config: &ExperimentConfig) -> Result<CompareReport> {
    config.validate()?;
    if config.n_trials < 2 {
        return Err(Error::TooFewTrials(config.n_trials));
    }
    let truth = true_expectation(config)?;
    let schedule = comparison_schedule(config)?;
    let observable = config.observable.to_string();

    // Standard-sampling arm.
    let standard_trials = run_trials(config.n_trials, |t| {
        let mut rng = stream_rng(config.seed, STREAM_STANDARD_ARM + t as u64);
        let outcomes = draw_layer_outcomes(config, 0, config.baseline_shots, truth, &mut rng)?;
        Ok(Estimate { pi_hat: standard_sampling_estimate(&outcomes)?, lambda_hat: 0.0 })
    })?;
    let standard_stats =
        trial_statistics(&standard_trials.iter().map(|e| e.pi_hat).collect::<Vec<_>>(), truth)?;
    let standard = EstimateReport::new(
        "standard",
        observable.clone(),
        vec![0],
        config.baseline_shots,
        truth,
        config.seed,
        standard_trials,
        &standard_stats,
    );

    // Enhanced-sampling arm.
    let m = schedule.total_shots() as usize;
    let grid = config.compare_grid_spec();
    let rae_trials = if config.rae_fresh_data {
        let entries: Vec<(u32, u64)> =
            schedule.entries().iter().map(|e| (e.layers, e.shots)).collect();
        run_trials(config.n_trials, |t| {
            let mut rng = stream_rng(config.seed, STREAM_RAE_ARM + t as u64);
            let data = generate_dataset(config, &entries, &mut rng)?;
            mle_estimate(&data, m, &grid, config.resample_mode, &mut rng)
        })?
    } else {
        let entries: Vec<(u32, u64)> =
            schedule.layers().iter().map(|&l| (l, config.shots_per_layer)).collect();
        let mut rng = stream_rng(config.seed, STREAM_RAE_ARM);
        let reservoir = generate_dataset(config, &entries, &mut rng)?;
        run_trials(config.n_trials, |t| {
            let mut rng = stream_rng(config.seed, STREAM_RAE_ARM + 1 + t as u64);
            mle_estimate(&reservoir, m, &grid, config.resample_mode, &mut rng)
        })?
    };
    let rae_stats =
        trial_statistics(&rae_trials.iter().map(|e| e.pi_hat).collect::<Vec<_>>(), truth)?;
    let rae = EstimateReport::new(
        "rae",
        observable,
        schedule.layers(),
        m as u64,
        truth,
        config.seed,
        rae_trials,
        &rae_stats,
    );

    Ok(CompareReport {
        config: config.clone(),
        rmse_ratio: standard.rmse / rae.rmse,
        sigma_ratio: standard.sigma / rae.sigma,
        bias_ratio: standard.bias.abs() / rae.bias.abs(),
        standard,
        rae,
        hardware_reference: HARDWARE_REFERENCE,
    })
}

/// Fisher-information-per-time landscape over a layer range, with local
/// maxima and dead spots flagged (interior points only).
pub fn run_fisher_scan(
    pi: f64,
    lambda: f64,
    l_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<FisherRow>> {
    let layers: Vec<u32> = l_range.collect();
    if layers.is_empty() {
        return Err(Error::LayerSelection("empty layer range".into()));
    }
    let values: Vec<f64> = layers
        .iter()
        .map(|&l| crate::estimation::fisher_info_per_time(pi, lambda, l))
        .collect::<Result<_>>()?;
    Ok(layers
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let interior = i > 0 && i + 1 < values.len();
            FisherRow {
                layers: l,
                queries: 2 * l + 1,
                fisher_per_time: values[i],
                depth_units: 2.5 * l as f64 + 1.0,
                local_max: interior && values[i] > values[i - 1] && values[i] > values[i + 1],
                dead_spot: interior && values[i] < values[i - 1] && values[i] < values[i + 1],
            }
        })
        .collect())
}

/// CSV form of [`run_fisher_scan`].
pub fn fisher_scan_csv(rows: &[FisherRow]) -> String {
    fisher_csv(rows)
}

/// Convenience for tests and the demo: a bounded-nuisance grid with the same
/// spacing as `base`, for sparse-schedule inference.
pub fn bounded_lambda_grid(base: &GridSpec, lambda_max: f64) -> GridSpec {
    let spacing = if base.lambda_points > 1 {
        (base.lambda_max - base.lambda_min) / (base.lambda_points - 1) as f64
    } else {
        1e-3
    };
    GridSpec {
        lambda_points: ((lambda_max / spacing).round() as usize + 1).max(2),
        lambda_max,
        ..*base
    }
}
