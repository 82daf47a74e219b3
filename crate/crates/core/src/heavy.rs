//! Heavy outputs and the 2/3 pass test.

use alloc::vec::Vec;


use crate::sim::ShotCounts;
use crate::{Error, Result};

/// Pass threshold on the heavy-output probability.
pub const HOP_THRESHOLD: f64 = 2.0 / 3.0;

/// Standard deviations below the pooled HOP used for the pass bound.
pub const CONFIDENCE_SIGMAS: f64 = 2.0;

/// Outcomes whose ideal probability is strictly above the median.
#[derive(Clone, Debug, PartialEq)]
pub struct HeavySet {
    pub median: f64,
    pub ideal_heavy_mass: f64,
    mask: Vec<bool>,
}

impl HeavySet {
    pub fn contains(&self, outcome: usize) -> bool {
        self.mask.get(outcome).copied().unwrap_or(false)
    }

    pub fn members(&self) -> Vec<usize> {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(x, &heavy)| heavy.then_some(x))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&h| h).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of outcomes the set was built over.
    pub fn domain_size(&self) -> usize {
        self.mask.len()
    }
}

/// Median of `values`: the midpoint of the two central order statistics
/// for an even count.
pub fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub fn heavy_set(ideal_probs: &[f64]) -> HeavySet {
    let median = median(ideal_probs);
    let mask: Vec<bool> = ideal_probs.iter().map(|&p| p > median).collect();
    let ideal_heavy_mass = ideal_probs
        .iter()
        .zip(&mask)
        .filter(|(_, &heavy)| heavy)
        .map(|(&p, _)| p)
        .sum::<f64>()
        .clamp(0.0, 1.0);
    HeavySet { median, ideal_heavy_mass, mask }
}

/// Fraction of shots that landed on heavy outcomes.
pub fn hop_estimate(counts: &ShotCounts, hs: &HeavySet) -> f64 {
    if counts.total_shots() == 0 {
        return 0.0;
    }
    let heavy: u64 = counts
        .iter()
        .filter(|&(outcome, _)| hs.contains(outcome))
        .map(|(_, c)| c)
        .sum();
    heavy as f64 / counts.total_shots() as f64
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HeavyOutputResult {
    pub per_circuit_hop: Vec<f64>,
    pub shots_per_circuit: u64,
    pub pooled_hop: f64,
    /// `pooled − 2σ`, σ the binomial error over all pooled shots.
    pub ci_low: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Pools per-circuit HOPs and applies the `ci_low > 2/3` rule.
///
/// Fails with [`Error::Degenerate`] when the pooled HOP is exactly 0 or 1
/// over fewer than 10 shots in total; callers treat that as not passed.
pub fn evaluate_pass(per_circuit_hops: &[f64], shots_per_circuit: u64) -> Result<HeavyOutputResult> {
    let circuits = per_circuit_hops.len();
    if circuits < 2 {
        return Err(Error::Domain(alloc::format!(
            "the pass test needs at least 2 circuits, got {circuits}"
        )));
    }
    if shots_per_circuit == 0 {
        return Err(Error::Domain("shots per circuit must be at least 1".into()));
    }
    let pooled_hop = per_circuit_hops.iter().sum::<f64>() / circuits as f64;
    let samples = circuits as u64 * shots_per_circuit;
    if (pooled_hop == 0.0 || pooled_hop == 1.0) && samples < 10 {
        return Err(Error::Degenerate { pooled: pooled_hop, samples: samples as usize });
    }
    let sigma = (pooled_hop * (1.0 - pooled_hop) / samples as f64).sqrt();
    let ci_low = (pooled_hop - CONFIDENCE_SIGMAS * sigma).clamp(0.0, pooled_hop);
    Ok(HeavyOutputResult {
        per_circuit_hop: per_circuit_hops.to_vec(),
        shots_per_circuit,
        pooled_hop,
        ci_low,
        threshold: HOP_THRESHOLD,
        passed: ci_low > HOP_THRESHOLD,
    })
}

impl HeavyOutputResult {
    /// The fail-safe outcome for a degenerate interval.
    pub fn not_passed(per_circuit_hops: &[f64], shots_per_circuit: u64) -> Self {
        let n = per_circuit_hops.len().max(1) as f64;
        HeavyOutputResult {
            per_circuit_hop: per_circuit_hops.to_vec(),
            shots_per_circuit,
            pooled_hop: per_circuit_hops.iter().sum::<f64>() / n,
            ci_low: 0.0,
            threshold: HOP_THRESHOLD,
            passed: false,
        }
    }
}
