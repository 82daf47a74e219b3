use alloc::vec::Vec;

use num_complex::Complex64;

use super::state::{for_each_pair_block, mix4, StateVector};
use crate::circuit::Unitary4;
use crate::permutation;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Mixed state of `width` qubits, `2^n × 2^n` row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    width: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn zero(width: usize) -> Self {
        Self::from_pure(&StateVector::zero(width))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut entries = alloc::vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[r * dim + c] = amps[r] * amps[c].conj();
            }
        }
        DensityMatrix { width: state.width(), entries }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        1 << self.width
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// `⟨v|ρ|v⟩`; real and non-negative for a valid state.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let dim = self.dim();
        let mut acc = ZERO;
        for r in 0..dim {
            let row: Complex64 = (0..dim).map(|c| self.entries[r * dim + c] * v[c]).sum();
            acc += v[r].conj() * row;
        }
        acc
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.get(i, i).re.max(0.0)).collect()
    }

    /// `ρ → U ρ U†` on the pair; caller checks the indices.
    pub fn apply_gate(&mut self, u: &Unitary4, (a, b): (usize, usize)) {
        let dim = self.dim();
        let width = self.width;
        let entries = &mut self.entries;
        // U on the row index of every column
        for col in 0..dim {
            for_each_pair_block(width, a, b, |idx| {
                let v = idx.map(|r| entries[r * dim + col]);
                let out = mix4(&u.0, v);
                for (k, &r) in idx.iter().enumerate() {
                    entries[r * dim + col] = out[k];
                }
            });
        }
        // conj(U) on the column index of every row gives ρ U†
        let conj = u.0.map(|row| row.map(|z| z.conj()));
        for row in 0..dim {
            let slice = &mut entries[row * dim..(row + 1) * dim];
            for_each_pair_block(width, a, b, |idx| {
                let out = mix4(&conj, idx.map(|c| slice[c]));
                for (k, &c) in idx.iter().enumerate() {
                    slice[c] = out[k];
                }
            });
        }
    }

    pub fn apply_permutation(&mut self, perm: &[usize]) {
        if permutation::is_identity(perm) {
            return;
        }
        let dim = self.dim();
        let image: Vec<usize> = (0..dim).map(|x| permutation::permute_bits(x, perm)).collect();
        let mut out = alloc::vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                out[image[r] * dim + image[c]] = self.entries[r * dim + c];
            }
        }
        self.entries = out;
    }

    /// Depolarizing channel of strength `p` on the given qubits:
    /// `ρ → (1 − p) ρ + p · (I/2^k ⊗ Tr_qubits ρ)`.
    pub fn depolarize(&mut self, qubits: &[usize], p: f64) {
        if p == 0.0 {
            return;
        }
        let dim = self.dim();
        let mask = qubits.iter().fold(0usize, |m, &q| m | (1 << q));
        let sub_states = 1usize << qubits.len();
        let spread = |bits: usize| -> usize {
            qubits
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &q)| acc | (((bits >> i) & 1) << q))
        };
        let offsets: Vec<usize> = (0..sub_states).map(spread).collect();
        let weight = p / sub_states as f64;
        let old = self.entries.clone();
        for r in 0..dim {
            for c in 0..dim {
                let keep = (1.0 - p) * old[r * dim + c];
                self.entries[r * dim + c] = if (r ^ c) & mask == 0 {
                    // diagonal in the targeted subsystem: add the partial trace
                    let (rb, cb) = (r & !mask, c & !mask);
                    let traced: Complex64 =
                        offsets.iter().map(|&o| old[(rb | o) * dim + (cb | o)]).sum();
                    keep + weight * traced
                } else {
                    keep
                };
            }
        }
    }
}
