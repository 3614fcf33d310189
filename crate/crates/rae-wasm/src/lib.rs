//! Browser bindings for the robust amplitude estimation demo.
//!
//! Three interactive operations, each returning a JSON payload for the
//! static page in `www/`:
//!
//! - [`fisher_scan`]: the information-per-time landscape that drives layer
//!   selection, with peaks and dead spots flagged.
//! - [`likelihood_curve`]: how the outcome law sharpens with layer count and
//!   flattens with decay.
//! - [`run_estimation`]: draw outcomes, run the grid MLE over (Pi, lambda),
//!   and compare against standard sampling at the same circuit-time budget.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use rae_core::circuits::build_ansatz;
use rae_core::config::{Backend, ExperimentConfig, Observable};
use rae_core::estimation::{likelihood, LikelihoodParams};
use rae_core::experiments::{
    bounded_lambda_grid, run_fisher_scan, run_sample, stream_rng, true_expectation,
};
use rae_core::inference::{
    resample_counts, standard_sampling_estimate, PosteriorGrid, ResampleMode,
};
use rae_core::noise::NoiseModel;
use rae_core::sim::{expectation, Outcome};

fn err_to_js(err: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&err.to_string())
}

#[derive(Serialize)]
struct FisherPoint {
    layers: u32,
    queries: u32,
    fisher_per_time: f64,
    depth_units: f64,
    local_max: bool,
    dead_spot: bool,
}

#[derive(Serialize)]
struct FisherScanPayload {
    pi: f64,
    lambda: f64,
    argmax_layers: u32,
    points: Vec<FisherPoint>,
}

/// Fisher information per unit time for L in 0..=l_max at coarse (pi, lambda).
#[wasm_bindgen]
pub fn fisher_scan(pi: f64, lambda: f64, l_max: u32) -> Result<String, JsValue> {
    let rows = run_fisher_scan(pi, lambda, 0..=l_max).map_err(err_to_js)?;
    let argmax = rows
        .iter()
        .max_by(|a, b| a.fisher_per_time.partial_cmp(&b.fisher_per_time).unwrap())
        .map(|r| r.layers)
        .unwrap_or(0);
    let payload = FisherScanPayload {
        pi,
        lambda,
        argmax_layers: argmax,
        points: rows
            .iter()
            .map(|r| FisherPoint {
                layers: r.layers,
                queries: r.queries,
                fisher_per_time: r.fisher_per_time,
                depth_units: r.depth_units,
                local_max: r.local_max,
                dead_spot: r.dead_spot,
            })
            .collect(),
    };
    serde_json::to_string(&payload).map_err(err_to_js)
}

#[derive(Serialize)]
struct LikelihoodCurvePayload {
    layers: u32,
    lambda: f64,
    pi: Vec<f64>,
    p_plus: Vec<f64>,
    /// The decay envelope (1 +/- e^{-(L+1/2) lambda}) / 2.
    envelope_hi: f64,
    envelope_lo: f64,
}

/// P(+1 | Pi) across Pi in [-1, 1] for an L-layer circuit at decay lambda.
#[wasm_bindgen]
pub fn likelihood_curve(layers: u32, lambda: f64, points: usize) -> Result<String, JsValue> {
    let points = points.clamp(2, 4001);
    let mut pi = Vec::with_capacity(points);
    let mut p_plus = Vec::with_capacity(points);
    for i in 0..points {
        let x = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        let p = likelihood(&LikelihoodParams { pi: x, lambda, layers }, Outcome::Plus)
            .map_err(err_to_js)?;
        pi.push(x);
        p_plus.push(p);
    }
    let decay = (-(layers as f64 + 0.5) * lambda).exp();
    let payload = LikelihoodCurvePayload {
        layers,
        lambda,
        pi,
        p_plus,
        envelope_hi: 0.5 * (1.0 + decay),
        envelope_lo: 0.5 * (1.0 - decay),
    };
    serde_json::to_string(&payload).map_err(err_to_js)
}

#[derive(Serialize)]
struct EstimationPayload {
    observable: String,
    theta: f64,
    lambda: f64,
    layers: Vec<u32>,
    shots_per_layer: u64,
    m: usize,
    seed: u64,
    backend: String,
    pi_true: f64,
    pi_hat: f64,
    lambda_hat: f64,
    pi_error: f64,
    standard_estimate: f64,
    standard_shots: u64,
    standard_error: f64,
    /// Per-layer empirical means of the +/-1 outcomes.
    layer_means: Vec<f64>,
    /// Normalized posterior heatmap, row-major [lambda][pi].
    posterior: Vec<f64>,
    pi_axis_min: f64,
    pi_axis_max: f64,
    pi_axis_points: usize,
    lambda_axis_min: f64,
    lambda_axis_max: f64,
    lambda_axis_points: usize,
}

/// End-to-end estimation: draw `shots_per_layer` outcomes for each layer in
/// `layers_csv`, run the grid MLE on M resampled outcomes, and compare with
/// standard sampling spending the same circuit time.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn run_estimation(
    theta: f64,
    lambda: f64,
    coherent_epsilon: f64,
    layers_csv: &str,
    shots_per_layer: u32,
    m: u32,
    seed: u32,
    use_simulator: bool,
) -> Result<String, JsValue> {
    let layers: Vec<u32> = layers_csv
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| JsValue::from_str("layers must be a comma-separated list of integers"))?;
    let backend = if use_simulator || coherent_epsilon != 0.0 {
        Backend::Simulator
    } else {
        Backend::Analytic
    };
    let config = ExperimentConfig {
        observable: Observable::XX,
        theta,
        noise: NoiseModel { lambda, prep_half_layer: true, coherent_epsilon },
        layers: layers.clone(),
        shots_per_layer: shots_per_layer as u64,
        m: m as usize,
        seed: seed as u64,
        backend,
        // Browser-sized grid: 0.005 Pi cells, 0.002 lambda cells.
        pi_points: 401,
        lambda_points: 101,
        lambda_max: 0.2,
        ..ExperimentConfig::default()
    };
    config.validate().map_err(err_to_js)?;

    let pi_true = true_expectation(&config).map_err(err_to_js)?;
    let file = run_sample(&config).map_err(err_to_js)?;
    let layer_means: Vec<f64> =
        layers.iter().map(|&l| file.data.layer_mean(l).unwrap_or(0.0)).collect();

    // Bound the nuisance support when the layer ladder is sparse, matching
    // the CLI comparison behavior.
    let grid = if layers.len() <= 4 && !layers.contains(&0) {
        bounded_lambda_grid(&config.grid_spec(), (1.5 * lambda).clamp(0.04, 0.2))
    } else {
        config.grid_spec()
    };

    // One resample feeds both the point estimate and the heatmap.
    let m_eff = (m as usize).min(file.data.total());
    let mut rng = stream_rng(config.seed, 9_000);
    let counts =
        resample_counts(&file.data, m_eff, ResampleMode::Pooled, &mut rng).map_err(err_to_js)?;
    let mut posterior = PosteriorGrid::uniform(&grid).map_err(err_to_js)?;
    for (&(l, outcome), &count) in &counts {
        posterior.bayes_update_counted(outcome, l, count).map_err(err_to_js)?;
    }
    let (pi_hat, lambda_hat) = posterior.argmax();
    let weights = posterior.normalized_weights();
    let lambda_axis_points = weights.nrows();
    let heatmap: Vec<f64> = weights.into_iter().collect();

    // Standard sampling at the same circuit time as the schedule.
    let depth_units: f64 = layers.iter().map(|&l| 2.5 * l as f64 + 1.0).sum::<f64>()
        * shots_per_layer as f64;
    let standard_shots = depth_units.round() as u64;
    let std_config = ExperimentConfig {
        layers: vec![0],
        shots_per_layer: standard_shots,
        ..config.clone()
    };
    let std_file = run_sample(&std_config).map_err(err_to_js)?;
    let standard_estimate =
        standard_sampling_estimate(std_file.data.outcomes(0)).map_err(err_to_js)?;

    let payload = EstimationPayload {
        observable: config.observable.to_string(),
        theta,
        lambda,
        layers,
        shots_per_layer: shots_per_layer as u64,
        m: m_eff,
        seed: seed as u64,
        backend: backend.to_string(),
        pi_true,
        pi_hat,
        lambda_hat,
        pi_error: pi_hat - pi_true,
        standard_estimate,
        standard_shots,
        standard_error: standard_estimate - pi_true,
        layer_means,
        posterior: heatmap,
        pi_axis_min: grid.pi_min,
        pi_axis_max: grid.pi_max,
        pi_axis_points: grid.pi_points,
        lambda_axis_min: grid.lambda_min,
        lambda_axis_max: grid.lambda_max,
        lambda_axis_points,
    };
    serde_json::to_string(&payload).map_err(err_to_js)
}

/// The noiseless signal expectation of the built-in two-qubit circuit.
#[wasm_bindgen]
pub fn ansatz_expectation(theta: f64) -> Result<f64, JsValue> {
    let state = build_ansatz(theta).simulate().map_err(err_to_js)?;
    expectation(&state, &Observable::XX.pauli_string()).map_err(err_to_js)
}
