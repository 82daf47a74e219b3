//! Classical simulation of model circuits.
//!
//! Two engines share one channel definition. The density-matrix engine
//! evolves the exact mixed state (width ≤ 6); the trajectory engine unravels
//! every depolarizing channel into random Pauli insertions and samples one
//! shot per trajectory (width ≤ 20).
//!
//! Channel semantics, per operation of a [`Program`]:
//! - model gate: depolarizing with probability `p2` on the gate pair,
//! - routing SWAP: depolarizing with probability `p_swap` on the pair,
//! - idle position in a layer: depolarizing with probability `p1`,
//! - permutation: noiseless relabeling.
//!
//! A depolarizing channel of strength `p` on `k` qubits replaces their state
//! by the maximally mixed one with probability `p`; a trajectory realizes
//! this by applying one of the `4^k` Paulis (identity included) uniformly at
//! random with probability `p`. Readout flips every measured bit
//! independently with probability `p_readout`.

mod counts;
mod density;
mod noise;
mod program;
mod state;
mod trajectory;

pub use counts::{bitstring, parse_bitstring, ShotCounts};
pub use density::DensityMatrix;
pub use noise::NoiseModel;
pub use program::{Operation, Program};
pub use state::{Pauli, StateVector};
pub use trajectory::{sample_distribution, sample_program, TrajectorySampler};

use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::seed::SeedSpec;
use crate::{Error, Result};

/// Largest width the state-vector engine accepts by default (16 M amplitudes).
pub const STATE_VECTOR_CAP: usize = 20;
/// Largest width the density-matrix engine accepts.
pub const DENSITY_MATRIX_CAP: usize = 6;

pub(crate) fn check_cap(engine: &'static str, width: usize, cap: usize) -> Result<()> {
    if width > cap {
        Err(Error::Capacity { engine, width, cap })
    } else {
        Ok(())
    }
}

/// Exact Born-rule distribution of `circuit` applied to `|0…0⟩`.
pub fn ideal_probabilities(circuit: &Circuit) -> Result<Vec<f64>> {
    ideal_probabilities_with_cap(circuit, STATE_VECTOR_CAP)
}

pub fn ideal_probabilities_with_cap(circuit: &Circuit, cap: usize) -> Result<Vec<f64>> {
    check_cap("state-vector", circuit.width, cap)?;
    Program::from_circuit(circuit).ideal_probabilities()
}

/// Shot counts under `noise`, one stochastic Pauli trajectory per shot.
pub fn sample_noisy_trajectory(
    circuit: &Circuit,
    noise: &NoiseModel,
    shots: u64,
    seed: &SeedSpec,
) -> Result<ShotCounts> {
    sample_program(&Program::from_circuit(circuit), noise, shots, seed)
}

/// Exact output distribution under `noise`, by density-matrix evolution.
pub fn noisy_distribution_exact(circuit: &Circuit, noise: &NoiseModel) -> Result<Vec<f64>> {
    Program::from_circuit(circuit).exact_distribution(noise)
}

/// Applies independent readout bit flips to an exact distribution.
pub fn apply_readout_noise(probs: &mut [f64], width: usize, p_readout: f64) {
    if p_readout == 0.0 {
        return;
    }
    for q in 0..width {
        let bit = 1 << q;
        for x in 0..probs.len() {
            if x & bit == 0 {
                let (p0, p1) = (probs[x], probs[x | bit]);
                probs[x] = (1.0 - p_readout) * p0 + p_readout * p1;
                probs[x | bit] = (1.0 - p_readout) * p1 + p_readout * p0;
            }
        }
    }
}
