//! Noise model definitions and their injection into simulated execution.
//!
//! The decay channel is global depolarizing: survival e^{-lambda/2} once
//! after state preparation (so the exponent comes out as L + 1/2) and
//! e^{-lambda} after each Grover layer. Global depolarizing commutes with the
//! layer unitaries, so every signal expectation is scaled by exactly
//! e^{-(L+1/2) lambda} — the channel realizes the decayed outcome law without
//! approximation. A coherent over-rotation can additionally be injected on
//! every Rz gate to create layer-dependent bias that the decay model cannot
//! absorb.

use serde::{Deserialize, Serialize};

use crate::circuits::{build_ansatz, build_enhanced_circuit, build_grover_iterate, Circuit,
                      EnhancedSamplingSpec};
use crate::error::{Error, Result};
use crate::estimation::{probability_plus, LikelihoodParams};
use crate::sim::{apply_gate, apply_global_depolarizing, DensityMatrix, Gate};

/// Exponential-decay noise with optional coherent Rz over-rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Per-Grover-layer exponential decay rate, nonnegative.
    pub lambda: f64,
    /// Whether preparation/measurement contributes the extra e^{-lambda/2}.
    pub prep_half_layer: bool,
    /// Systematic over-rotation added to every Rz angle at execution time,
    /// in radians.
    pub coherent_epsilon: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self { lambda: 0.0, prep_half_layer: true, coherent_epsilon: 0.0 }
    }
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn with_lambda(lambda: f64) -> Self {
        Self { lambda, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::LikelihoodParams(format!("lambda {} negative", self.lambda)));
        }
        if !self.coherent_epsilon.is_finite() {
            return Err(Error::LikelihoodParams("coherent_epsilon not finite".into()));
        }
        Ok(())
    }

    /// Effective exponent multiplier (L + 1/2 or L) for the analytic law.
    fn exponent_layers(&self, layers: u32) -> f64 {
        layers as f64 + if self.prep_half_layer { 0.5 } else { 0.0 }
    }
}

fn apply_gates_with_epsilon(
    state: DensityMatrix,
    gates: &[Gate],
    epsilon: f64,
) -> Result<DensityMatrix> {
    let mut out = state;
    for gate in gates {
        let executed = match *gate {
            Gate::Rz { target, angle } if epsilon != 0.0 => {
                Gate::Rz { target, angle: angle + epsilon }
            }
            ref g => g.clone(),
        };
        out = apply_gate(&out, &executed)?;
    }
    Ok(out)
}

/// Execute an enhanced-sampling circuit under the noise model.
///
/// Runs the ansatz, applies depolarizing survival e^{-lambda/2} once if
/// `prep_half_layer`, then for each Grover iterate applies its gates followed
/// by depolarizing survival e^{-lambda}. `coherent_epsilon` is added to each
/// Rz angle at execution time (so the inverted ansatz inside an iterate is no
/// longer the exact inverse of the prepared one — the source of
/// layer-dependent bias).
///
/// `circuit` must be exactly the circuit built from `spec`.
pub fn run_noisy(
    circuit: &Circuit,
    spec: &EnhancedSamplingSpec,
    model: &NoiseModel,
) -> Result<DensityMatrix> {
    model.validate()?;
    let expected = build_enhanced_circuit(spec);
    if *circuit != expected {
        return Err(Error::CircuitSpecMismatch(format!(
            "circuit has {} gates / depth {}, spec builds {} gates / depth {}",
            circuit.gates().len(),
            circuit.depth_units(),
            expected.gates().len(),
            expected.depth_units()
        )));
    }

    let ansatz = build_ansatz(spec.ansatz_theta);
    let iterate = build_grover_iterate(&ansatz, &spec.observable)?;
    let eps = model.coherent_epsilon;

    let mut state = DensityMatrix::pure_zero(ansatz.qubits());
    state = apply_gates_with_epsilon(state, ansatz.gates(), eps)?;
    if model.prep_half_layer {
        state = apply_global_depolarizing(&state, (-model.lambda / 2.0).exp())?;
    }
    for _ in 0..spec.layers {
        state = apply_gates_with_epsilon(state, iterate.gates(), eps)?;
        state = apply_global_depolarizing(&state, (-model.lambda).exp())?;
    }
    Ok(state)
}

/// Analytic P(+1) for the decay model (epsilon must be zero — coherent
/// over-rotation has no closed-form outcome law here).
pub fn outcome_probability(model: &NoiseModel, pi: f64, layers: u32) -> Result<f64> {
    model.validate()?;
    if model.coherent_epsilon != 0.0 {
        return Err(Error::CoherentNotAnalytic(model.coherent_epsilon));
    }
    if !pi.is_finite() || pi.abs() > 1.0 {
        return Err(Error::LikelihoodParams(format!("pi {pi} outside [-1, 1]")));
    }
    if model.prep_half_layer {
        probability_plus(&LikelihoodParams { pi, lambda: model.lambda, layers })
    } else {
        let decay = (-model.exponent_layers(layers) * model.lambda).exp();
        let t = crate::estimation::chebyshev_t(2 * layers + 1, pi)?;
        Ok(0.5 * (1.0 + decay * t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimation::chebyshev_t;
    use crate::sim::{expectation, PauliString};

    const THETA: f64 = -6.0575;

    fn spec(obs: &str, layers: u32) -> EnhancedSamplingSpec {
        EnhancedSamplingSpec {
            ansatz_theta: THETA,
            observable: PauliString::parse(obs).unwrap(),
            layers,
        }
    }

    fn simulated_p_plus(s: &EnhancedSamplingSpec, model: &NoiseModel) -> f64 {
        let circuit = build_enhanced_circuit(s);
        let state = run_noisy(&circuit, s, model).unwrap();
        (1.0 + expectation(&state, &s.observable).unwrap()) / 2.0
    }

    #[test]
    fn noiseless_model_matches_plain_simulation() {
        let s = spec("XX", 3);
        let circuit = build_enhanced_circuit(&s);
        let noisy = run_noisy(&circuit, &s, &NoiseModel::noiseless()).unwrap();
        let plain = circuit.simulate().unwrap();
        assert!(noisy.frobenius_distance(&plain) <= 1e-12);
    }

    #[test]
    fn channel_matches_analytic_law_at_reported_point() {
        let s = spec("XX", 1);
        let model = NoiseModel::with_lambda(0.08);
        let pi0 = expectation(
            &build_ansatz(THETA).simulate().unwrap(),
            &s.observable,
        )
        .unwrap();
        let analytic =
            0.5 * (1.0 + (-1.5f64 * 0.08).exp() * chebyshev_t(3, pi0).unwrap());
        let simulated = simulated_p_plus(&s, &model);
        assert!((simulated - analytic).abs() <= 1e-10, "{simulated} vs {analytic}");
        assert!((outcome_probability(&model, pi0, 1).unwrap() - simulated).abs() <= 1e-10);
    }

    #[test]
    fn huge_lambda_fully_depolarizes() {
        let s = spec("YY", 2);
        let model = NoiseModel::with_lambda(50.0);
        let circuit = build_enhanced_circuit(&s);
        let state = run_noisy(&circuit, &s, &model).unwrap();
        assert!(expectation(&state, &s.observable).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn channel_formula_equivalence_over_grid() {
        // The module's central identity: simulated P(+1) equals the analytic
        // law for every layer count, decay rate, and observable tested.
        for obs in ["XX", "YY"] {
            let pi0 = expectation(
                &build_ansatz(THETA).simulate().unwrap(),
                &PauliString::parse(obs).unwrap(),
            )
            .unwrap();
            for lambda in [0.0, 0.04, 0.08, 0.2] {
                let model = NoiseModel::with_lambda(lambda);
                for layers in 0..=10u32 {
                    let s = spec(obs, layers);
                    let simulated = simulated_p_plus(&s, &model);
                    let analytic = outcome_probability(&model, pi0, layers).unwrap();
                    assert!(
                        (simulated - analytic).abs() <= 1e-9,
                        "{obs} lambda={lambda} L={layers}: {simulated} vs {analytic}"
                    );
                }
            }
        }
    }

    #[test]
    fn decay_is_monotone_in_lambda() {
        let s = spec("XX", 2);
        let pi0 = expectation(
            &build_ansatz(THETA).simulate().unwrap(),
            &s.observable,
        )
        .unwrap();
        let mut prev_gap = f64::INFINITY;
        for lambda in [0.0, 0.02, 0.05, 0.1, 0.2, 0.4] {
            let model = NoiseModel::with_lambda(lambda);
            let gap = (outcome_probability(&model, pi0, 2).unwrap() - 0.5).abs();
            assert!(gap < prev_gap, "gap not decreasing at lambda={lambda}");
            prev_gap = gap;
        }
    }

    #[test]
    fn coherent_error_breaks_the_analytic_law() {
        // With epsilon != 0 the channel/formula equivalence must fail; the
        // model mismatch is the point of the bias study.
        let pi0 = expectation(
            &build_ansatz(THETA).simulate().unwrap(),
            &PauliString::parse("XX").unwrap(),
        )
        .unwrap();
        let model = NoiseModel { lambda: 0.05, prep_half_layer: true, coherent_epsilon: 0.05 };
        let clean = NoiseModel::with_lambda(0.05);
        for layers in [0u32, 1] {
            let s = spec("XX", layers);
            let simulated = simulated_p_plus(&s, &model);
            let analytic = outcome_probability(&clean, pi0, layers).unwrap();
            assert!(
                (simulated - analytic).abs() > 1e-3,
                "L={layers}: coherent error unexpectedly invisible ({simulated} vs {analytic})"
            );
        }
    }

    #[test]
    fn outcome_probability_rejects_coherent_epsilon() {
        let model = NoiseModel { lambda: 0.1, prep_half_layer: true, coherent_epsilon: 0.01 };
        assert!(matches!(
            outcome_probability(&model, -0.2, 1),
            Err(Error::CoherentNotAnalytic(_))
        ));
    }

    #[test]
    fn prep_half_layer_toggle_changes_exponent() {
        let pi0 = 0.6;
        let with_half = NoiseModel { lambda: 0.1, prep_half_layer: true, coherent_epsilon: 0.0 };
        let without = NoiseModel { lambda: 0.1, prep_half_layer: false, coherent_epsilon: 0.0 };
        let a = outcome_probability(&with_half, pi0, 2).unwrap();
        let b = outcome_probability(&without, pi0, 2).unwrap();
        let t5 = chebyshev_t(5, pi0).unwrap();
        assert!((a - 0.5 * (1.0 + (-0.25f64).exp() * t5)).abs() < 1e-14);
        assert!((b - 0.5 * (1.0 + (-0.2f64).exp() * t5)).abs() < 1e-14);
    }

    #[test]
    fn run_noisy_rejects_mismatched_circuit() {
        let s = spec("XX", 2);
        let wrong = build_enhanced_circuit(&spec("XX", 3));
        assert!(matches!(
            run_noisy(&wrong, &s, &NoiseModel::noiseless()),
            Err(Error::CircuitSpecMismatch(_))
        ));
    }
}
