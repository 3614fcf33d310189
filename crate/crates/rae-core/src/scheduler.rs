//! Layer-set selection and shot allocation under a runtime budget.
//!
//! Selection ranks layer counts by Fisher information per unit time; budgets
//! are kept in exact rational arithmetic over the 2.5 L + 1 depth model so
//! there is no floating drift in runtime bookkeeping. Per-shot latency is
//! excluded from the cost model (bookkeeping-only caveat: accounting for it
//! would only widen the gap in favor of fewer, deeper shots).

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::circuits::enhanced_depth_units;
use crate::error::{Error, Result};
use crate::estimation::fisher_info_per_time;

/// Shots assigned to one layer count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub layers: u32,
    pub shots: u64,
}

/// A shot allocation over distinct layer counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
}

impl Schedule {
    pub fn new(entries: Vec<ScheduleEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::LayerSelection("schedule needs at least one entry".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &entries {
            if e.shots == 0 {
                return Err(Error::LayerSelection(format!("layer {} has zero shots", e.layers)));
            }
            if !seen.insert(e.layers) {
                return Err(Error::LayerSelection(format!("duplicate layer {}", e.layers)));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    pub fn layers(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.layers).collect()
    }

    pub fn total_shots(&self) -> u64 {
        self.entries.iter().map(|e| e.shots).sum()
    }

    /// Exact total circuit time: sum of shots * (2.5 L + 1) in ansatz units.
    pub fn total_depth_units(&self) -> Rational64 {
        self.entries
            .iter()
            .map(|e| enhanced_depth_units(e.layers) * Rational64::from_integer(e.shots as i64))
            .sum()
    }

    /// Mean depth per shot.
    pub fn mean_depth_units(&self) -> Rational64 {
        self.total_depth_units() / Rational64::from_integer(self.total_shots() as i64)
    }
}

/// The k layer values in `l_range` with greatest Fisher information per time,
/// in ascending order; ties break toward the smaller layer count.
pub fn select_layers(
    pi_guess: f64,
    lambda_guess: f64,
    l_range: std::ops::RangeInclusive<u32>,
    k: usize,
) -> Result<Vec<u32>> {
    let width = (*l_range.end() as usize).saturating_sub(*l_range.start() as usize) + 1;
    if k == 0 || k > width {
        return Err(Error::LayerSelection(format!(
            "k = {k} outside 1..={width} for range {l_range:?}"
        )));
    }
    let mut scored: Vec<(u32, f64)> = l_range
        .map(|l| fisher_info_per_time(pi_guess, lambda_guess, l).map(|f| (l, f)))
        .collect::<Result<_>>()?;
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("fisher values are finite").then(a.0.cmp(&b.0)));
    let mut selected: Vec<u32> = scored.into_iter().take(k).map(|(l, _)| l).collect();
    selected.sort_unstable();
    Ok(selected)
}

/// Allocate shots over `layers` so total circuit time matches
/// `baseline_shots` depth-1 shots: total = floor(baseline / mean depth),
/// split equally, with any remainder going one shot each to the deepest
/// layers. Keeps |total time - baseline| within one mean depth.
pub fn equal_runtime_budget(baseline_shots: u64, layers: &[u32]) -> Result<Schedule> {
    if layers.is_empty() {
        return Err(Error::LayerSelection("empty layer list".into()));
    }
    let k = layers.len() as i64;
    let mut sorted = layers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != layers.len() {
        return Err(Error::LayerSelection("duplicate layers in budget".into()));
    }
    let mean_depth: Rational64 =
        sorted.iter().map(|&l| enhanced_depth_units(l)).sum::<Rational64>()
            / Rational64::from_integer(k);
    let total = (Rational64::from_integer(baseline_shots as i64) / mean_depth)
        .floor()
        .to_integer() as u64;
    if total < sorted.len() as u64 {
        return Err(Error::BudgetTooSmall { baseline: baseline_shots });
    }
    let per = total / sorted.len() as u64;
    let remainder = (total % sorted.len() as u64) as usize;
    let n = sorted.len();
    let entries = sorted
        .iter()
        .enumerate()
        .map(|(i, &l)| ScheduleEntry {
            layers: l,
            shots: per + if i >= n - remainder { 1 } else { 0 },
        })
        .collect();
    Schedule::new(entries)
}
