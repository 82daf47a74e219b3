use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::Unitary4;
use crate::permutation;
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `0 → I, 1 → X, 2 → Y, 3 → Z`.
    pub fn from_index(index: usize) -> Pauli {
        match index & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }
}

/// Pure state of `width` qubits; amplitude index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    width: usize,
    amplitudes: Vec<Complex64>,
}

/// Visits the four amplitude offsets of every `(a, b)` block, ordered by
/// the gate basis index `2·bit(a) + bit(b)`.
#[inline]
pub(crate) fn for_each_pair_block(width: usize, a: usize, b: usize, mut f: impl FnMut([usize; 4])) {
    let (bit_a, bit_b) = (1usize << a, 1usize << b);
    let mask = bit_a | bit_b;
    for base in 0..(1usize << width) {
        if base & mask == 0 {
            f([base, base | bit_b, base | bit_a, base | mask]);
        }
    }
}

#[inline]
pub(crate) fn mix4(u: &[[Complex64; 4]; 4], v: [Complex64; 4]) -> [Complex64; 4] {
    let mut out = [ZERO; 4];
    for (r, o) in out.iter_mut().enumerate() {
        *o = u[r][0] * v[0] + u[r][1] * v[1] + u[r][2] * v[2] + u[r][3] * v[3];
    }
    out
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(width: usize) -> Self {
        let mut amplitudes = alloc::vec![ZERO; 1 << width];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        StateVector { width, amplitudes }
    }

    pub fn basis(width: usize, index: usize) -> Self {
        let mut amplitudes = alloc::vec![ZERO; 1 << width];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { width, amplitudes }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Domain(alloc::format!("{len} amplitudes is not a power of two")));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(alloc::format!("state norm {norm} differs from 1")));
        }
        Ok(StateVector { width: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_pair(&self, (a, b): (usize, usize)) -> Result<()> {
        for q in [a, b] {
            if q >= self.width {
                return Err(Error::Index { index: q, width: self.width });
            }
        }
        if a == b {
            return Err(Error::Index { index: a, width: self.width });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, u: &Unitary4, pair: (usize, usize)) -> Result<()> {
        self.check_pair(pair)?;
        let amps = &mut self.amplitudes;
        for_each_pair_block(self.width, pair.0, pair.1, |idx| {
            let out = mix4(&u.0, [amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]]);
            for (k, &i) in idx.iter().enumerate() {
                amps[i] = out[k];
            }
        });
        Ok(())
    }

    /// Exchanges the states of qubits `a` and `b`.
    pub fn apply_swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair((a, b))?;
        let amps = &mut self.amplitudes;
        for_each_pair_block(self.width, a, b, |idx| amps.swap(idx[1], idx[2]));
        Ok(())
    }

    /// Moves the amplitude of basis state `x` to the state whose bit
    /// `perm[i]` equals bit `i` of `x`.
    pub fn apply_permutation(&mut self, perm: &[usize]) {
        debug_assert_eq!(perm.len(), self.width);
        if permutation::is_identity(perm) {
            return;
        }
        let mut out = alloc::vec![ZERO; self.amplitudes.len()];
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            out[permutation::permute_bits(x, perm)] = amp;
        }
        self.amplitudes = out;
    }

    pub fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) {
        let bit = 1usize << qubit;
        let amps = &mut self.amplitudes;
        match pauli {
            Pauli::I => {}
            Pauli::X => {
                for x in 0..amps.len() {
                    if x & bit == 0 {
                        amps.swap(x, x | bit);
                    }
                }
            }
            Pauli::Y => {
                // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
                let i = Complex64::new(0.0, 1.0);
                for x in 0..amps.len() {
                    if x & bit == 0 {
                        let (a0, a1) = (amps[x], amps[x | bit]);
                        amps[x] = -i * a1;
                        amps[x | bit] = i * a0;
                    }
                }
            }
            Pauli::Z => {
                for (x, a) in amps.iter_mut().enumerate() {
                    if x & bit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }
}
