use alloc::vec::Vec;

use rand::Rng;

use super::counts::ShotCounts;
use super::noise::NoiseModel;
use super::program::Program;
use super::state::{Pauli, StateVector};
use super::{check_cap, STATE_VECTOR_CAP};
use crate::seed::SeedSpec;
use crate::{Error, Result};

/// Amplitudes kept in error-free checkpoints (64 MiB of `Complex64`).
const CHECKPOINT_BUDGET: usize = 1 << 22;

/// Pauli-trajectory sampler for one program and noise model.
///
/// The error-free evolution is computed once and checkpointed; a shot whose
/// first Pauli insertion happens at operation `i` resumes from the last
/// checkpoint before `i`. Shots without any insertion sample the ideal
/// final distribution directly.
pub struct TrajectorySampler<'a> {
    program: &'a Program,
    noise: NoiseModel,
    sites: Vec<Option<(f64, [usize; 2], usize)>>,
    stride: usize,
    checkpoints: Vec<StateVector>,
    ideal_cdf: Vec<f64>,
}

#[derive(Clone, Copy)]
struct Insertion {
    op: usize,
    paulis: [Pauli; 2],
}

impl<'a> TrajectorySampler<'a> {
    pub fn new(program: &'a Program, noise: &NoiseModel) -> Result<Self> {
        check_cap("state-vector", program.width, STATE_VECTOR_CAP)?;
        noise.validate()?;
        let sites: Vec<_> = program
            .ops
            .iter()
            .map(|op| op.noise_site(noise).filter(|(p, _, _)| *p > 0.0))
            .collect();

        let amps = 1usize << program.width;
        let stride = (program.ops.len().max(1) * amps).div_ceil(CHECKPOINT_BUDGET).max(1);
        let mut state = StateVector::zero(program.width);
        let mut checkpoints = Vec::new();
        for (i, op) in program.ops.iter().enumerate() {
            if i % stride == 0 {
                checkpoints.push(state.clone());
            }
            op.apply_state(&mut state)?;
        }
        let mut acc = 0.0;
        let ideal_cdf = state
            .amplitudes()
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();

        Ok(TrajectorySampler { program, noise: *noise, sites, stride, checkpoints, ideal_cdf })
    }

    fn sample_insertions<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<Insertion>) {
        out.clear();
        for (op, site) in self.sites.iter().enumerate() {
            let Some((p, _, arity)) = *site else { continue };
            if rng.random::<f64>() < p {
                let index = rng.random_range(0..(1usize << (2 * arity)));
                let paulis = if arity == 2 {
                    [Pauli::from_index(index >> 2), Pauli::from_index(index)]
                } else {
                    [Pauli::from_index(index), Pauli::I]
                };
                if paulis != [Pauli::I, Pauli::I] {
                    out.push(Insertion { op, paulis });
                }
            }
        }
    }

    fn evolve(&self, insertions: &[Insertion]) -> Result<StateVector> {
        let first = insertions[0].op;
        let start = (first / self.stride) * self.stride;
        let mut state = self.checkpoints[first / self.stride].clone();
        let mut pending = insertions.iter().peekable();
        for (i, op) in self.program.ops.iter().enumerate().skip(start) {
            op.apply_state(&mut state)?;
            while let Some(ins) = pending.next_if(|ins| ins.op == i) {
                let (_, qubits, arity) = self.sites[i].expect("insertion on a noiseless op");
                for k in 0..arity {
                    state.apply_pauli(qubits[k], ins.paulis[k]);
                }
            }
        }
        Ok(state)
    }

    fn pick(cdf_like: impl Iterator<Item = f64>, u: f64, len: usize) -> usize {
        let mut last_nonzero = 0;
        let mut prev = 0.0;
        for (x, c) in cdf_like.enumerate() {
            if c > prev {
                last_nonzero = x;
            }
            if u < c {
                return x;
            }
            prev = c;
        }
        last_nonzero.min(len - 1)
    }

    /// One shot: Pauli insertions, then the outcome, then readout flips.
    fn sample_shot<R: Rng + ?Sized>(&self, rng: &mut R, scratch: &mut Vec<Insertion>) -> Result<usize> {
        self.sample_insertions(rng, scratch);
        let u: f64 = rng.random();
        let len = self.ideal_cdf.len();
        let mut outcome = if scratch.is_empty() {
            match self.ideal_cdf.iter().position(|&c| u < c) {
                Some(x) => x,
                None => Self::pick(self.ideal_cdf.iter().copied(), u, len),
            }
        } else {
            let state = self.evolve(scratch)?;
            let mut acc = 0.0;
            Self::pick(
                state.amplitudes().iter().map(|a| {
                    acc += a.norm_sqr();
                    acc
                }),
                u,
                len,
            )
        };
        if self.noise.p_readout > 0.0 {
            for q in 0..self.program.width {
                if rng.random::<f64>() < self.noise.p_readout {
                    outcome ^= 1 << q;
                }
            }
        }
        Ok(self.program.map_outcome(outcome))
    }

    /// Shot `s` draws from the stream `seed / s`.
    pub fn sample(&self, shots: u64, seed: &SeedSpec) -> Result<ShotCounts> {
        let mut counts = ShotCounts::new(self.program.width);
        let mut scratch = Vec::new();
        for shot in 0..shots {
            let mut rng = seed.child(shot).rng();
            counts.record(self.sample_shot(&mut rng, &mut scratch)?);
        }
        Ok(counts)
    }
}

pub fn sample_program(program: &Program, noise: &NoiseModel, shots: u64, seed: &SeedSpec) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }
    TrajectorySampler::new(program, noise)?.sample(shots, seed)
}

/// Draws `shots` outcomes from an explicit distribution.
pub fn sample_distribution<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Result<ShotCounts> {
    let width = probs.len().trailing_zeros() as usize;
    if !probs.len().is_power_of_two() {
        return Err(Error::Domain("distribution length is not a power of two".into()));
    }
    let dist = rand::distr::weighted::WeightedIndex::new(probs)
        .map_err(|e| Error::Domain(alloc::format!("invalid distribution: {e}")))?;
    let mut counts = ShotCounts::new(width);
    for _ in 0..shots {
        counts.record(rng.sample(&dist));
    }
    Ok(counts)
}
