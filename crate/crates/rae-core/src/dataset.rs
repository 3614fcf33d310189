//! Line-oriented outcome dataset files.
//!
//! A header records how the data was generated (observable, angle, noise,
//! backend, seed), then one row per shot: `layer shot_index outcome` with
//! outcomes written as `+1` / `-1`. The writer is canonical, so
//! write -> read -> write is byte-identical.

use crate::config::{Backend, ExperimentConfig, Observable};
use crate::error::{Error, Result};
use crate::inference::OutcomeDataset;
use crate::noise::NoiseModel;
use crate::sim::Outcome;

const MAGIC: &str = "# rae outcome dataset v1";

/// A dataset together with its generation metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetFile {
    pub observable: Observable,
    pub theta: f64,
    pub noise: NoiseModel,
    pub backend: Backend,
    pub seed: u64,
    pub data: OutcomeDataset,
}

impl DatasetFile {
    pub fn from_config(config: &ExperimentConfig, data: OutcomeDataset) -> Self {
        Self {
            observable: config.observable,
            theta: config.theta,
            noise: config.noise,
            backend: config.backend,
            seed: config.seed,
            data,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!("observable = {}\n", self.observable));
        out.push_str(&format!("theta = {}\n", self.theta));
        out.push_str(&format!("lambda = {}\n", self.noise.lambda));
        out.push_str(&format!("prep_half_layer = {}\n", self.noise.prep_half_layer));
        out.push_str(&format!("coherent_epsilon = {}\n", self.noise.coherent_epsilon));
        out.push_str(&format!("backend = {}\n", self.backend));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str("# columns: layer shot_index outcome\n");
        for layer in self.data.layers().collect::<Vec<_>>() {
            for (idx, outcome) in self.data.outcomes(layer).iter().enumerate() {
                let sign = match outcome {
                    Outcome::Plus => "+1",
                    Outcome::Minus => "-1",
                };
                out.push_str(&format!("{layer} {idx} {sign}\n"));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::DatasetFormat(msg);
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err(bad(format!("missing magic line {MAGIC:?}")));
        }

        let mut observable = None;
        let mut theta = None;
        let mut noise = NoiseModel::default();
        let mut backend = None;
        let mut seed = None;
        let mut data = OutcomeDataset::new();

        for (idx, raw) in lines.enumerate() {
            let lineno = idx + 2;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((key, value)) = line.split_once('=') {
                let key = key.trim();
                let value = value.trim();
                let err = |what: &str| bad(format!("line {lineno}: {key}: {what}"));
                match key {
                    "observable" => observable = Some(Observable::parse(value)?),
                    "theta" => theta = Some(value.parse().map_err(|_| err("bad float"))?),
                    "lambda" => noise.lambda = value.parse().map_err(|_| err("bad float"))?,
                    "prep_half_layer" => {
                        noise.prep_half_layer = value.parse().map_err(|_| err("bad bool"))?
                    }
                    "coherent_epsilon" => {
                        noise.coherent_epsilon = value.parse().map_err(|_| err("bad float"))?
                    }
                    "backend" => {
                        backend = Some(match value {
                            "analytic" => Backend::Analytic,
                            "simulator" => Backend::Simulator,
                            _ => return Err(err("expected analytic or simulator")),
                        })
                    }
                    "seed" => seed = Some(value.parse().map_err(|_| err("bad integer"))?),
                    other => return Err(bad(format!("line {lineno}: unknown key {other:?}"))),
                }
            } else {
                let mut parts = line.split_whitespace();
                let layer: u32 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(format!("line {lineno}: bad layer")))?;
                let index: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(format!("line {lineno}: bad shot index")))?;
                let outcome = match parts.next() {
                    Some("+1") => Outcome::Plus,
                    Some("-1") => Outcome::Minus,
                    other => return Err(bad(format!("line {lineno}: bad outcome {other:?}"))),
                };
                if parts.next().is_some() {
                    return Err(bad(format!("line {lineno}: trailing fields")));
                }
                if index != data.outcomes(layer).len() {
                    return Err(bad(format!(
                        "line {lineno}: shot index {index} out of order for layer {layer}"
                    )));
                }
                data.push(layer, outcome);
            }
        }

        Ok(Self {
            observable: observable.ok_or_else(|| bad("missing observable".into()))?,
            theta: theta.ok_or_else(|| bad("missing theta".into()))?,
            noise,
            backend: backend.ok_or_else(|| bad("missing backend".into()))?,
            seed: seed.ok_or_else(|| bad("missing seed".into()))?,
            data,
        })
    }
}
