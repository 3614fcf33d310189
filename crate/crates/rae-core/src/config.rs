//! Experiment configuration: a flat key-value file with documented keys.
//!
//! Format: one `key = value` per line, `#` starts a comment, unknown keys are
//! rejected. Environment variables are never read; all state flows through
//! the config and CLI flags.
//!
//! Keys (defaults in parentheses):
//!
//! - `observable` (`XX`): `XX` or `YY`
//! - `theta` (`-6.0575`): ansatz angle in radians
//! - `lambda` (`0`), `prep_half_layer` (`true`), `coherent_epsilon` (`0`):
//!   noise model
//! - `layers`: comma list, e.g. `0,1,2,3`; or `l_max` for `0..=l_max`
//!   (mutually exclusive)
//! - `shots_per_layer` (`8192`)
//! - `m` (`1000`): resample size per estimate
//! - `n_trials` (`32`)
//! - `resample_mode` (`pooled`): `pooled` or `stratified`
//! - `pi_points` (`2001`), `lambda_points` (`501`), `lambda_max` (`0.5`):
//!   posterior grid
//! - `seed` (`0`)
//! - `backend` (`simulator`): `simulator` or `analytic`; `analytic` requires
//!   `coherent_epsilon = 0`
//! - `baseline_shots` (`12875`): standard-sampling budget for the
//!   equal-runtime comparison
//! - `rae_layers` (`1,5,6,7`): enhanced-sampling schedule for the comparison
//! - `rae_shots`: optional explicit per-layer shot list for `rae_layers`
//! - `rae_fresh_data` (`false`): draw a fresh schedule-sized dataset per
//!   comparison trial instead of resampling a shared reservoir
//! - `compare_lambda_max` (1.5 x `lambda_guess`): nuisance-grid upper bound
//!   used by the comparison (the sparse schedule is identifiable only under
//!   bounded nuisance support)
//! - `sweep_l_max` (`5`): largest L_max for sweeps and bias studies
//! - `pi_guess` (`-0.22`), `lambda_guess` (`0.08`): coarse values for layer
//!   selection
//! - `out`: output path

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{GridSpec, ResampleMode};
use crate::noise::NoiseModel;
use crate::sim::PauliString;

/// Which two-qubit Pauli signal is being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Observable {
    XX,
    YY,
}

impl Observable {
    pub fn pauli_string(self) -> PauliString {
        match self {
            Observable::XX => PauliString::parse("XX").expect("valid"),
            Observable::YY => PauliString::parse("YY").expect("valid"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "XX" => Ok(Observable::XX),
            "YY" => Ok(Observable::YY),
            other => Err(Error::Config(format!("observable must be XX or YY, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Observable::XX => "XX",
            Observable::YY => "YY",
        })
    }
}

/// Where measurement outcomes come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Bernoulli draws from the analytic outcome law.
    Analytic,
    /// Density-matrix execution with noise channels, then parity sampling.
    Simulator,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Analytic => "analytic",
            Backend::Simulator => "simulator",
        })
    }
}

/// Fully resolved experiment configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub observable: Observable,
    pub theta: f64,
    pub noise: NoiseModel,
    pub layers: Vec<u32>,
    pub shots_per_layer: u64,
    pub m: usize,
    pub n_trials: usize,
    pub resample_mode: ResampleMode,
    pub pi_points: usize,
    pub lambda_points: usize,
    pub lambda_max: f64,
    pub seed: u64,
    pub backend: Backend,
    pub baseline_shots: u64,
    pub rae_layers: Vec<u32>,
    pub rae_shots: Option<Vec<u64>>,
    pub rae_fresh_data: bool,
    pub compare_lambda_max: Option<f64>,
    pub sweep_l_max: u32,
    pub pi_guess: f64,
    pub lambda_guess: f64,
    pub out: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            observable: Observable::XX,
            theta: -6.0575,
            noise: NoiseModel::default(),
            layers: (0..=10).collect(),
            shots_per_layer: 8192,
            m: 1000,
            n_trials: 32,
            resample_mode: ResampleMode::Pooled,
            pi_points: 2001,
            lambda_points: 501,
            lambda_max: 0.5,
            seed: 0,
            backend: Backend::Simulator,
            baseline_shots: 12875,
            rae_layers: vec![1, 5, 6, 7],
            rae_shots: None,
            rae_fresh_data: false,
            compare_lambda_max: None,
            sweep_l_max: 5,
            pi_guess: -0.22,
            lambda_guess: 0.08,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Self::default();
        let mut layers: Option<Vec<u32>> = None;
        let mut l_max: Option<u32> = None;
        let mut seen = std::collections::BTreeSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {lineno}: expected key = value")))?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::Config(format!("line {lineno}: duplicate key {key:?}")));
            }
            let err = |what: &str| Error::Config(format!("line {lineno}: {key}: {what}"));
            match key {
                "observable" => config.observable = Observable::parse(value)?,
                "theta" => config.theta = parse_num(value).ok_or_else(|| err("bad float"))?,
                "lambda" => {
                    config.noise.lambda = parse_num(value).ok_or_else(|| err("bad float"))?
                }
                "prep_half_layer" => {
                    config.noise.prep_half_layer =
                        parse_bool(value).ok_or_else(|| err("expected true/false"))?
                }
                "coherent_epsilon" => {
                    config.noise.coherent_epsilon =
                        parse_num(value).ok_or_else(|| err("bad float"))?
                }
                "layers" => layers = Some(parse_u32_list(value).ok_or_else(|| err("bad list"))?),
                "l_max" => l_max = Some(value.parse().map_err(|_| err("bad integer"))?),
                "shots_per_layer" => {
                    config.shots_per_layer = value.parse().map_err(|_| err("bad integer"))?
                }
                "m" => config.m = value.parse().map_err(|_| err("bad integer"))?,
                "n_trials" => config.n_trials = value.parse().map_err(|_| err("bad integer"))?,
                "resample_mode" => {
                    config.resample_mode = match value {
                        "pooled" => ResampleMode::Pooled,
                        "stratified" => ResampleMode::Stratified,
                        _ => return Err(err("expected pooled or stratified")),
                    }
                }
                "pi_points" => config.pi_points = value.parse().map_err(|_| err("bad integer"))?,
                "lambda_points" => {
                    config.lambda_points = value.parse().map_err(|_| err("bad integer"))?
                }
                "lambda_max" => {
                    config.lambda_max = parse_num(value).ok_or_else(|| err("bad float"))?
                }
                "seed" => config.seed = value.parse().map_err(|_| err("bad integer"))?,
                "backend" => {
                    config.backend = match value {
                        "analytic" => Backend::Analytic,
                        "simulator" => Backend::Simulator,
                        _ => return Err(err("expected analytic or simulator")),
                    }
                }
                "baseline_shots" => {
                    config.baseline_shots = value.parse().map_err(|_| err("bad integer"))?
                }
                "rae_layers" => {
                    config.rae_layers = parse_u32_list(value).ok_or_else(|| err("bad list"))?
                }
                "rae_shots" => {
                    config.rae_shots = Some(parse_u64_list(value).ok_or_else(|| err("bad list"))?)
                }
                "rae_fresh_data" => {
                    config.rae_fresh_data =
                        parse_bool(value).ok_or_else(|| err("expected true/false"))?
                }
                "compare_lambda_max" => {
                    config.compare_lambda_max =
                        Some(parse_num(value).ok_or_else(|| err("bad float"))?)
                }
                "sweep_l_max" => {
                    config.sweep_l_max = value.parse().map_err(|_| err("bad integer"))?
                }
                "pi_guess" => config.pi_guess = parse_num(value).ok_or_else(|| err("bad float"))?,
                "lambda_guess" => {
                    config.lambda_guess = parse_num(value).ok_or_else(|| err("bad float"))?
                }
                "out" => config.out = Some(value.to_string()),
                other => return Err(Error::Config(format!("line {lineno}: unknown key {other:?}"))),
            }
        }

        match (layers, l_max) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("layers and l_max are mutually exclusive".into()))
            }
            (Some(list), None) => config.layers = list,
            (None, Some(max)) => config.layers = (0..=max).collect(),
            (None, None) => {}
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.noise.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.backend == Backend::Analytic && self.noise.coherent_epsilon != 0.0 {
            return Err(Error::Config(
                "backend analytic requires coherent_epsilon = 0 (the analytic sampler \
                 implements the decay law only)"
                    .into(),
            ));
        }
        if self.layers.is_empty() {
            return Err(Error::Config("layers must be nonempty".into()));
        }
        let mut sorted = self.layers.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.layers.len() {
            return Err(Error::Config("layers must be distinct".into()));
        }
        if self.shots_per_layer == 0 {
            return Err(Error::Config("shots_per_layer must be positive".into()));
        }
        if self.m == 0 {
            return Err(Error::Config("m must be positive".into()));
        }
        if let Some(shots) = &self.rae_shots {
            if shots.len() != self.rae_layers.len() {
                return Err(Error::Config(format!(
                    "rae_shots has {} entries for {} rae_layers",
                    shots.len(),
                    self.rae_layers.len()
                )));
            }
            if shots.contains(&0) {
                return Err(Error::Config("rae_shots entries must be positive".into()));
            }
        }
        self.grid_spec().validate()?;
        Ok(())
    }

    /// The posterior grid described by the config.
    pub fn grid_spec(&self) -> GridSpec {
        GridSpec {
            pi_points: self.pi_points,
            pi_min: -1.0,
            pi_max: 1.0,
            lambda_points: self.lambda_points,
            lambda_min: 0.0,
            lambda_max: self.lambda_max,
        }
    }

    /// Nuisance-grid bound for the equal-runtime comparison: explicit
    /// `compare_lambda_max`, else 1.5 x the coarse decay guess. The lambda
    /// spacing of the main grid is preserved.
    pub fn compare_grid_spec(&self) -> GridSpec {
        let lambda_max = self.compare_lambda_max.unwrap_or(1.5 * self.lambda_guess);
        let base_spacing = if self.lambda_points > 1 {
            self.lambda_max / (self.lambda_points - 1) as f64
        } else {
            self.lambda_max.max(1e-3)
        };
        let lambda_points = if lambda_max > 0.0 {
            (lambda_max / base_spacing).round() as usize + 1
        } else {
            1
        };
        GridSpec {
            pi_points: self.pi_points,
            pi_min: -1.0,
            pi_max: 1.0,
            lambda_points: lambda_points.max(2),
            lambda_min: 0.0,
            lambda_max,
        }
    }
}

fn parse_num(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

fn parse_u32_list(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|p| p.trim().parse::<u32>().ok()).collect()
}

fn parse_u64_list(s: &str) -> Option<Vec<u64>> {
    s.split(',').map(|p| p.trim().parse::<u64>().ok()).collect()
}
