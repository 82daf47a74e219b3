use alloc::vec::Vec;

use super::density::DensityMatrix;
use super::noise::NoiseModel;
use super::state::StateVector;
use super::{apply_readout_noise, check_cap, DENSITY_MATRIX_CAP, STATE_VECTOR_CAP};
use crate::circuit::{Circuit, Unitary4};
use crate::permutation;
use crate::Result;

/// One step of an executable program on physical qubits.
#[derive(Clone, Debug, PartialEq)]
pub enum Operation {
    /// Noiseless relabeling of qubit positions.
    Permute(Vec<usize>),
    /// Model SU(4) gate, subject to `p2`.
    Gate { pair: (usize, usize), unitary: Unitary4 },
    /// SWAP inserted by routing, subject to `p_swap`.
    Swap(usize, usize),
    /// A position left without a gate in its layer, subject to `p1`.
    Idle(usize),
}

impl Operation {
    pub(crate) fn noise_site(&self, noise: &NoiseModel) -> Option<(f64, [usize; 2], usize)> {
        match *self {
            Operation::Permute(_) => None,
            Operation::Gate { pair, .. } => Some((noise.p2, [pair.0, pair.1], 2)),
            Operation::Swap(a, b) => Some((noise.p_swap, [a, b], 2)),
            Operation::Idle(q) => Some((noise.p1, [q, q], 1)),
        }
    }

    pub(crate) fn apply_state(&self, state: &mut StateVector) -> Result<()> {
        match self {
            Operation::Permute(perm) => {
                state.apply_permutation(perm);
                Ok(())
            }
            Operation::Gate { pair, unitary } => state.apply_gate(unitary, *pair),
            Operation::Swap(a, b) => state.apply_swap(*a, *b),
            Operation::Idle(_) => Ok(()),
        }
    }
}

/// A flat operation list plus the map from logical outcome bits to
/// physical qubits: logical bit `i` is read from physical qubit
/// `output_map[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub width: usize,
    pub ops: Vec<Operation>,
    pub output_map: Vec<usize>,
}

impl Program {
    /// Direct expansion of a logical circuit: per layer, the permutation,
    /// the gates, then an idle marker for every untouched position.
    pub fn from_circuit(circuit: &Circuit) -> Self {
        let mut ops = Vec::new();
        for layer in &circuit.layers {
            ops.push(Operation::Permute(layer.permutation.clone()));
            ops.extend(
                layer
                    .gates
                    .iter()
                    .map(|g| Operation::Gate { pair: g.pair, unitary: g.unitary }),
            );
            ops.extend(layer.idle_positions(circuit.width).into_iter().map(Operation::Idle));
        }
        Program {
            width: circuit.width,
            ops,
            output_map: permutation::identity(circuit.width),
        }
    }

    /// Physical outcome → logical outcome.
    pub fn map_outcome(&self, physical: usize) -> usize {
        self.output_map
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &q)| acc | (((physical >> q) & 1) << i))
    }

    pub fn swap_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Operation::Swap(..))).count()
    }

    pub fn ideal_state(&self) -> Result<StateVector> {
        check_cap("state-vector", self.width, STATE_VECTOR_CAP)?;
        let mut state = StateVector::zero(self.width);
        for op in &self.ops {
            op.apply_state(&mut state)?;
        }
        Ok(state)
    }

    /// Logical output distribution without noise.
    pub fn ideal_probabilities(&self) -> Result<Vec<f64>> {
        Ok(self.to_logical(&self.ideal_state()?.probabilities()))
    }

    /// Logical output distribution under `noise`, by density-matrix evolution.
    pub fn exact_distribution(&self, noise: &NoiseModel) -> Result<Vec<f64>> {
        check_cap("density-matrix", self.width, DENSITY_MATRIX_CAP)?;
        noise.validate()?;
        // validates indices before touching the density matrix
        let mut probe = StateVector::zero(self.width);
        for op in &self.ops {
            if !matches!(op, Operation::Permute(_)) {
                op.apply_state(&mut probe)?;
            }
        }
        let mut rho = DensityMatrix::zero(self.width);
        for op in &self.ops {
            match op {
                Operation::Permute(perm) => rho.apply_permutation(perm),
                Operation::Gate { pair, unitary } => rho.apply_gate(unitary, *pair),
                Operation::Swap(a, b) => rho.apply_gate(&Unitary4::swap(), (*a, *b)),
                Operation::Idle(_) => {}
            }
            if let Some((p, qubits, arity)) = op.noise_site(noise) {
                rho.depolarize(&qubits[..arity], p);
            }
        }
        let mut probs = rho.probabilities();
        apply_readout_noise(&mut probs, self.width, noise.p_readout);
        Ok(self.to_logical(&probs))
    }

    pub(crate) fn to_logical(&self, physical: &[f64]) -> Vec<f64> {
        if permutation::is_identity(&self.output_map) {
            return physical.to_vec();
        }
        let mut out = alloc::vec![0.0; physical.len()];
        for (x, &p) in physical.iter().enumerate() {
            out[self.map_outcome(x)] = p;
        }
        out
    }
}
