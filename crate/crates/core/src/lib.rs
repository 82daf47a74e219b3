//! Volumetric quantum benchmark core.
//!
//! Generates the layered random model circuits (a random qubit permutation
//! followed by pairwise Haar-random SU(4) gates per layer), simulates them
//! exactly or under gate-attached depolarizing noise, evaluates the
//! heavy-output test at the 2/3 threshold and turns per-width results into
//! the volumetric class scores QV-1 … QV-5 for shapes `n × n^k`.
//!
//! The crate also carries the depth-scaling taxonomy used to align known
//! algorithms with a volumetric class, and a SWAP-network router that
//! measures the physical overhead of the per-layer permutations on
//! constrained topologies.
//!
//! Everything here is `no_std` + `alloc`. File formats, the CLI and thread
//! pools live in the `volbench` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circuit;
mod error;
pub mod heavy;
pub mod permutation;
pub mod protocol;
pub mod random;
pub mod routing;
pub mod seed;
pub mod sim;
pub mod survey;

pub use circuit::{Circuit, Gate, Layer, Unitary4, ValidationReport, Violation};
pub use error::{Error, Result};
pub use heavy::{HeavyOutputResult, HeavySet};
pub use protocol::{ProtocolConfig, VolumetricClass, VolumetricScore, WidthResult};
pub use random::Pairing;
pub use routing::{Topology, TopologyKind};
pub use seed::SeedSpec;
pub use sim::{NoiseModel, Program, ShotCounts};

pub use num_complex::Complex64;
