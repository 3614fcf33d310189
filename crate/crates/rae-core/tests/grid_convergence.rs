//! Posterior-grid correctness at scale: a brute-force finer-grid oracle for
//! the argmax, and estimator consistency as M grows.

use rae_core::estimation::{likelihood, LikelihoodParams};
use rae_core::experiments::stream_rng;
use rae_core::inference::{
    mle_estimate, GridSpec, OutcomeDataset, PosteriorGrid, ResampleMode,
};
use rae_core::sim::Outcome;
use rand::Rng;

const LAMBDA_TRUTH: f64 = 0.08;

fn draw(data: &mut OutcomeDataset, pi: f64, layers: u32, shots: usize, rng: &mut impl Rng) {
    let p_plus = likelihood(
        &LikelihoodParams { pi, lambda: LAMBDA_TRUTH, layers },
        Outcome::Plus,
    )
    .unwrap();
    data.extend_layer(
        layers,
        (0..shots).map(|_| if rng.gen::<f64>() < p_plus { Outcome::Plus } else { Outcome::Minus }),
    );
}

/// Test-local log-likelihood, independent of the library's grid machinery.
fn oracle_log_lik(pi: f64, lambda: f64, layers: u32, outcome_sign: f64) -> f64 {
    let x = (2 * layers + 1) as f64;
    let t = (x * pi.clamp(-1.0, 1.0).acos()).cos();
    let decay = (-(layers as f64 + 0.5) * lambda).exp();
    let p_plus = 0.5 * (1.0 + decay * t);
    if outcome_sign > 0.0 {
        p_plus.ln()
    } else {
        (1.0 - p_plus).ln()
    }
}

#[test]
fn grid_argmax_matches_dense_oracle() {
    // 1000 synthetic outcomes from layers {1,5,6,7} at lambda = 0.08 truth.
    // The library's incremental grid argmax must land within two coarse
    // cells of a brute-force evaluation on a 5x denser grid.
    let pi_truth = -0.224;
    let mut rng = stream_rng(4242, 0);
    let mut data = OutcomeDataset::new();
    for layers in [1u32, 5, 6, 7] {
        draw(&mut data, pi_truth, layers, 250, &mut rng);
    }
    let pooled = data.pooled();

    let coarse = GridSpec {
        pi_points: 2001,
        pi_min: -1.0,
        pi_max: 1.0,
        lambda_points: 121,
        lambda_min: 0.0,
        lambda_max: 0.12,
    };
    let mut grid = PosteriorGrid::uniform(&coarse).unwrap();
    for &(layers, outcome) in &pooled {
        grid.bayes_update(outcome, layers).unwrap();
    }
    let (pi_hat, lambda_hat) = grid.argmax();

    // Brute force on a 5x denser grid, summed per (layer, sign) cell.
    let mut counts = std::collections::BTreeMap::<(u32, i8), f64>::new();
    for &(layers, outcome) in &pooled {
        *counts.entry((layers, outcome.sign())).or_insert(0.0) += 1.0;
    }
    let dense_pi: Vec<f64> = (0..10001).map(|i| -1.0 + 2.0 * i as f64 / 10000.0).collect();
    let dense_lambda: Vec<f64> = (0..601).map(|i| 0.12 * i as f64 / 600.0).collect();
    let mut best = f64::NEG_INFINITY;
    let mut best_point = (0.0, 0.0);
    for &lambda in &dense_lambda {
        for &pi in &dense_pi {
            let mut ll = 0.0;
            for (&(layers, sign), &n) in &counts {
                ll += n * oracle_log_lik(pi, lambda, layers, sign as f64);
            }
            if ll > best {
                best = ll;
                best_point = (pi, lambda);
            }
        }
    }

    let pi_cell = 2.0 / 2000.0;
    let lambda_cell = 0.12 / 120.0;
    assert!(
        (pi_hat - best_point.0).abs() <= 2.0 * pi_cell + 1e-12,
        "pi: grid {pi_hat} vs dense {}",
        best_point.0
    );
    assert!(
        (lambda_hat - best_point.1).abs() <= 2.0 * lambda_cell + 1e-12,
        "lambda: grid {lambda_hat} vs dense {}",
        best_point.1
    );
}

#[test]
fn estimator_converges_with_resample_size() {
    // Data generated exactly from the decayed outcome law at grid-aligned
    // truth (-0.224, 0.08). Median |pi_hat - truth| over 32 seeds decreases
    // as M grows through 1e3, 1e4, 1e5, and ends within one grid cell.
    let pi_truth = -0.224;
    let grid = GridSpec::default();
    let layer_set = [0u32, 1, 2, 3, 4, 5];
    let shots = 20_000;

    let mut medians = Vec::new();
    for (mi, m) in [1_000usize, 10_000, 100_000].iter().enumerate() {
        let mut errors: Vec<f64> = (0..32u64)
            .map(|seed| {
                let mut rng = stream_rng(31_000 + seed, mi as u64);
                let mut data = OutcomeDataset::new();
                for &layers in &layer_set {
                    draw(&mut data, pi_truth, layers, shots, &mut rng);
                }
                let est =
                    mle_estimate(&data, *m, &grid, ResampleMode::Pooled, &mut rng).unwrap();
                (est.pi_hat - pi_truth).abs()
            })
            .collect();
        errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(0.5 * (errors[15] + errors[16]));
    }
    assert!(
        medians[0] > medians[1] && medians[1] >= medians[2],
        "medians not decreasing: {medians:?}"
    );
    let cell = 2.0 / 2000.0;
    assert!(medians[2] <= cell + 1e-12, "final median {} above one cell", medians[2]);
}
