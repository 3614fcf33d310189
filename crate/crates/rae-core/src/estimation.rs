//! Scalar kernel: Chebyshev polynomials, outcome likelihoods, and Fisher
//! information per unit circuit time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::Outcome;

/// Guard band on Chebyshev arguments: values within this of [-1, 1] are
/// clamped; anything further out signals upstream numerical corruption and is
/// an error rather than a clamp.
pub const CHEBYSHEV_GUARD: f64 = 1e-12;

/// T_m(x) = cos(m arccos x).
pub fn chebyshev_t(degree: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + CHEBYSHEV_GUARD {
        return Err(Error::ChebyshevDomain(x));
    }
    let clamped = x.clamp(-1.0, 1.0);
    Ok((degree as f64 * clamped.acos()).cos())
}

/// Arguments of the decayed outcome likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodParams {
    /// Target expectation value, in [-1, 1].
    pub pi: f64,
    /// Per-layer exponential decay rate, nonnegative.
    pub lambda: f64,
    /// Grover layer count L.
    pub layers: u32,
}

impl LikelihoodParams {
    pub fn validate(&self) -> Result<()> {
        if !self.pi.is_finite() || self.pi.abs() > 1.0 + CHEBYSHEV_GUARD {
            return Err(Error::LikelihoodParams(format!("pi {} outside [-1, 1]", self.pi)));
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::LikelihoodParams(format!("lambda {} negative", self.lambda)));
        }
        Ok(())
    }
}

/// P(+1) for an L-layer circuit: (1 + e^{-(L+1/2) lambda} T_{2L+1}(pi)) / 2.
pub fn probability_plus(params: &LikelihoodParams) -> Result<f64> {
    params.validate()?;
    let decay = (-(params.layers as f64 + 0.5) * params.lambda).exp();
    let t = chebyshev_t(2 * params.layers + 1, params.pi)?;
    Ok(0.5 * (1.0 + decay * t))
}

/// Probability of the given outcome. The two outcomes sum to 1 bit-exactly:
/// P(-1) is computed as 1 - P(+1).
pub fn likelihood(params: &LikelihoodParams, outcome: Outcome) -> Result<f64> {
    let p_plus = probability_plus(params)?;
    Ok(match outcome {
        Outcome::Plus => p_plus,
        Outcome::Minus => 1.0 - p_plus,
    })
}

/// Fisher information about the rotation angle theta = arccos(pi), per unit
/// circuit time, for an L-layer circuit. Time is counted in ansatz queries
/// x = 2L + 1 (the scheduler separately re-weights by the 2.5L + 1 depth
/// model for wall-clock budgeting):
///
///   I/T = x e^{-lambda x} sin^2(x theta) / (1 - e^{-lambda x} cos^2(x theta))
///
/// so that I/T times x is the per-shot Fisher information of the outcome law.
/// At lambda = 0 this reduces to x. Zero exactly when sin(x theta) = 0, a
/// legitimate dead point rather than an error.
pub fn fisher_info_per_time(pi: f64, lambda: f64, layers: u32) -> Result<f64> {
    if !pi.is_finite() || pi.abs() >= 1.0 {
        return Err(Error::DegeneratePi(pi));
    }
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::LikelihoodParams(format!("lambda {lambda} negative")));
    }
    let x = (2 * layers + 1) as f64;
    let theta = pi.acos();
    let s = (x * theta).sin();
    let s2 = s * s;
    if s2 == 0.0 {
        return Ok(0.0);
    }
    let c = (x * theta).cos();
    let decay = (-lambda * x).exp();
    Ok(x * decay * s2 / (1.0 - decay * c * c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chebyshev_low_degrees() {
        for x in [-1.0, -0.37, 0.0, 0.62, 1.0] {
            assert!((chebyshev_t(0, x).unwrap() - 1.0).abs() < 1e-15);
            assert!((chebyshev_t(1, x).unwrap() - x).abs() < 1e-15);
        }
        // cos(3 * 60 deg) = cos 180 deg
        assert!((chebyshev_t(3, 0.5).unwrap() - (-1.0)).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_matches_cubic_at_reported_point() {
        let x = -0.2238f64;
        let cubic = 4.0 * x * x * x - 3.0 * x;
        let got = chebyshev_t(3, x).unwrap();
        assert!((got - cubic).abs() < 1e-12);
        assert!((got - 0.626_562_618_912).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_domain_guard() {
        assert!(chebyshev_t(2, 1.0 + 5e-13).is_ok());
        assert!(matches!(chebyshev_t(2, 1.0 + 1e-9), Err(Error::ChebyshevDomain(_))));
        assert!(matches!(chebyshev_t(2, f64::NAN), Err(Error::ChebyshevDomain(_))));
    }

    proptest! {
        #[test]
        fn chebyshev_recursion_agreement(x in -1.0f64..1.0) {
            // cos form vs T_{m+1} = 2x T_m - T_{m-1}
            let mut prev = 1.0f64;
            let mut curr = x;
            for m in 1..=25u32 {
                let cos_form = chebyshev_t(m, x).unwrap();
                prop_assert!((cos_form - curr).abs() <= 1e-10,
                    "m={} x={} cos={} rec={}", m, x, cos_form, curr);
                let next = 2.0 * x * curr - prev;
                prev = curr;
                curr = next;
            }
        }

        #[test]
        fn likelihood_outcomes_sum_to_one_exactly(
            pi in -1.0f64..1.0,
            lambda in 0.0f64..0.5,
            layers in 0u32..12,
        ) {
            let params = LikelihoodParams { pi, lambda, layers };
            let plus = likelihood(&params, Outcome::Plus).unwrap();
            let minus = likelihood(&params, Outcome::Minus).unwrap();
            prop_assert_eq!(plus + minus, 1.0);
            prop_assert!((0.0..=1.0).contains(&plus));
        }
    }

    #[test]
    fn likelihood_reduces_to_noiseless_at_lambda_zero() {
        for (pi, layers) in [(-0.2238, 0), (0.4, 2), (-0.9, 5), (0.0, 0)] {
            let params = LikelihoodParams { pi, lambda: 0.0, layers };
            let got = likelihood(&params, Outcome::Plus).unwrap();
            let noiseless = 0.5 * (1.0 + chebyshev_t(2 * layers + 1, pi).unwrap());
            assert!((got - noiseless).abs() < 1e-15);
        }
        // pi = 0, L = 0: both outcomes equally likely.
        let params = LikelihoodParams { pi: 0.0, lambda: 0.0, layers: 0 };
        assert!((likelihood(&params, Outcome::Plus).unwrap() - 0.5).abs() < 1e-15);
        assert!((likelihood(&params, Outcome::Minus).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn likelihood_frozen_high_precision_value() {
        // Extended-precision evaluation of P(-1 | pi=-0.2238, lambda=0.08, L=7).
        let params = LikelihoodParams { pi: -0.2238, lambda: 0.08, layers: 7 };
        let got = likelihood(&params, Outcome::Minus).unwrap();
        assert!((got - 0.5663144094281215).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn noiseless_example_probability() {
        let params = LikelihoodParams { pi: -0.2238, lambda: 0.0, layers: 0 };
        let got = likelihood(&params, Outcome::Plus).unwrap();
        assert!((got - 0.3881).abs() < 1e-12);
    }

    #[test]
    fn fisher_reduces_to_query_count_at_lambda_zero() {
        for layers in 0..8u32 {
            let x = (2 * layers + 1) as f64;
            let got = fisher_info_per_time(-0.22, 0.0, layers).unwrap();
            assert!((got - x).abs() < 1e-9, "L={layers}: {got}");
        }
    }

    #[test]
    fn fisher_rejects_degenerate_pi() {
        assert!(matches!(fisher_info_per_time(1.0, 0.1, 2), Err(Error::DegeneratePi(_))));
        assert!(matches!(fisher_info_per_time(-1.0, 0.1, 2), Err(Error::DegeneratePi(_))));
        assert!(fisher_info_per_time(0.999999, 0.1, 2).is_ok());
    }

    #[test]
    fn fisher_landscape_at_working_point() {
        let values: Vec<f64> =
            (0..=10u32).map(|l| fisher_info_per_time(-0.22, 0.08, l).unwrap()).collect();
        let argmax = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(argmax, 7);
        // Secondary local peak at L = 1.
        assert!(values[1] > values[0] && values[1] > values[2]);
        // At least one dead spot strictly between the peaks.
        let dead = (2..7).any(|l| values[l] < values[l - 1] && values[l] < values[l + 1]);
        assert!(dead, "no interior dead spot in {values:?}");
        // Frozen magnitudes from the closed form.
        assert!((values[7] - 4.409258).abs() < 1e-4);
        assert!((values[1] - 2.085735).abs() < 1e-4);
        assert!(values[3] < 0.01, "L=3 should be a deep dead spot, got {}", values[3]);
    }

    #[test]
    fn fisher_consistency_with_finite_differences() {
        // I/T times x must equal the per-shot Fisher information of the
        // Bernoulli outcome law with respect to theta, estimated by a central
        // finite difference of the log-likelihood.
        let h = 1e-5;
        for (pi, lambda, layers) in
            [(-0.22, 0.08, 7u32), (-0.22, 0.08, 1), (0.4, 0.04, 3), (-0.6, 0.12, 2)]
        {
            let x = (2 * layers + 1) as f64;
            let log_p = |s: f64, theta: f64| -> f64 {
                let decay = (-(layers as f64 + 0.5) * lambda).exp();
                (0.5 * (1.0 + s * decay * (x * theta).cos())).ln()
            };
            let theta = pi.acos();
            let mut fd = 0.0;
            for s in [1.0, -1.0] {
                let p = log_p(s, theta).exp();
                let d = (log_p(s, theta + h) - log_p(s, theta - h)) / (2.0 * h);
                fd += p * d * d;
            }
            let got = fisher_info_per_time(pi, lambda, layers).unwrap() * x;
            assert!(
                ((got - fd) / fd).abs() <= 1e-6,
                "pi={pi} lambda={lambda} L={layers}: {got} vs {fd}"
            );
        }
    }

    #[test]
    fn fisher_rule_of_thumb_bracket() {
        // The optimal layer count satisfies |(2L+1) - 1/lambda| <= 1/lambda.
        for lambda in [0.04, 0.08, 0.16] {
            for pi in [0.0, 0.3, -0.5] {
                let best = (0..=40u32)
                    .map(|l| (l, fisher_info_per_time(pi, lambda, l).unwrap()))
                    .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap()
                    .0;
                let x = (2 * best + 1) as f64;
                assert!(
                    (x - 1.0 / lambda).abs() <= 1.0 / lambda,
                    "lambda={lambda} pi={pi}: optimal x={x}"
                );
            }
        }
    }

    #[test]
    fn fisher_zero_at_dead_angle() {
        // pi such that x * theta is a multiple of pi for x = 3 makes sin
        // vanish up to rounding; the value must be essentially zero.
        let pi = (std::f64::consts::PI / 3.0).cos();
        let got = fisher_info_per_time(pi, 0.05, 1).unwrap();
        assert!(got.abs() < 1e-25, "got {got}");
    }
}
