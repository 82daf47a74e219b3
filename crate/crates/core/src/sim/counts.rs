use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::{Error, Result};

/// Outcome index → count. Bit `q` of an outcome is qubit `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShotCounts {
    width: usize,
    counts: BTreeMap<usize, u64>,
    total_shots: u64,
}

impl ShotCounts {
    pub fn new(width: usize) -> Self {
        ShotCounts { width, counts: BTreeMap::new(), total_shots: 0 }
    }

    pub fn from_counts(width: usize, counts: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        let mut out = ShotCounts::new(width);
        for (outcome, count) in counts {
            if outcome >> width != 0 {
                return Err(Error::Index { index: outcome, width });
            }
            out.add(outcome, count);
        }
        Ok(out)
    }

    pub fn record(&mut self, outcome: usize) {
        self.add(outcome, 1);
    }

    pub fn add(&mut self, outcome: usize, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry(outcome).or_insert(0) += count;
        self.total_shots += count;
    }

    /// Associative and commutative combination of two runs.
    pub fn merge(&mut self, other: &ShotCounts) -> Result<()> {
        if self.width != other.width {
            return Err(Error::Domain(alloc::format!(
                "cannot merge counts of widths {} and {}",
                self.width,
                other.width
            )));
        }
        for (&outcome, &count) in &other.counts {
            self.add(outcome, count);
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn get(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn frequencies(&self) -> alloc::vec::Vec<f64> {
        let mut freq = alloc::vec![0.0; 1 << self.width];
        for (outcome, count) in self.iter() {
            freq[outcome] = count as f64 / self.total_shots as f64;
        }
        freq
    }
}

/// Big-endian in qubit order: qubit 0 is the leftmost character.
pub fn bitstring(outcome: usize, width: usize) -> String {
    (0..width)
        .map(|q| if (outcome >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(text: &str) -> Result<usize> {
    if text.len() > usize::BITS as usize - 1 {
        return Err(Error::Parse(alloc::format!("bitstring `{text}` is too long")));
    }
    text.chars().enumerate().try_fold(0usize, |acc, (q, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << q)),
        _ => Err(Error::Parse(alloc::format!("invalid bitstring `{text}`"))),
    })
}
