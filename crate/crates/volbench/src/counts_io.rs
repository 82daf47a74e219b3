//! JSON forms of measurement results. Bitstrings put qubit 0 leftmost.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use volbench_core::sim::{bitstring, parse_bitstring};
use volbench_core::ShotCounts;

use crate::FormatError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountsDoc {
    shots: u64,
    counts: BTreeMap<String, u64>,
}

/// `{"shots": N, "counts": {"0110": k, …}}`; zero counts are omitted.
pub fn counts_to_json(counts: &ShotCounts) -> String {
    let doc = CountsDoc {
        shots: counts.total_shots(),
        counts: counts
            .iter()
            .filter(|&(_, c)| c > 0)
            .map(|(x, c)| (bitstring(x, counts.width()), c))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("counts always serialize")
}

pub fn counts_from_json(text: &str) -> Result<ShotCounts, FormatError> {
    let doc: CountsDoc = crate::error::decode_json(text)?;
    let width = doc.counts.keys().next().map_or(0, String::len);
    if doc.counts.keys().any(|k| k.len() != width) {
        return Err(FormatError::Schema("bitstrings of different lengths".into()));
    }
    let entries = doc
        .counts
        .iter()
        .map(|(k, &c)| {
            parse_bitstring(k)
                .map(|x| (x, c))
                .map_err(|e| FormatError::Schema(format!("bad bitstring `{k}`: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let counts = ShotCounts::from_counts(width, entries).map_err(|e| FormatError::Invariant(e.to_string()))?;
    if counts.total_shots() != doc.shots {
        return Err(FormatError::Invariant(format!(
            "counts sum to {} but shots = {}",
            counts.total_shots(),
            doc.shots
        )));
    }
    Ok(counts)
}

/// `{"width": n, "probabilities": {"00": p, …}}` with every outcome listed.
pub fn probabilities_to_json(probs: &[f64]) -> String {
    let width = probs.len().trailing_zeros() as usize;
    let map: BTreeMap<String, f64> = probs.iter().enumerate().map(|(x, &p)| (bitstring(x, width), p)).collect();
    serde_json::to_string_pretty(&serde_json::json!({ "width": width, "probabilities": map }))
        .expect("probabilities always serialize")
}
