//! Volumetric classes, per-width tests and QV-k scores.
//!
//! A score of `n` in class QV-k means every width `2..=n` passed the
//! heavy-output test on model circuits of shape `n × n^k`. The width
//! search ascends from 2 and stops at the first failure.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::heavy::{self, HeavyOutputResult};
use crate::random::{build_model_circuit, Pairing};
use crate::routing::{route_circuit, Topology, TopologyKind};
use crate::seed::{SeedSpec, RNG_ALGORITHM};
use crate::sim::{self, NoiseModel};
use crate::{Error, Result};

/// QV-k for `k ∈ 1..=5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "u8", into = "u8"))]
pub struct VolumetricClass(u8);

impl VolumetricClass {
    pub const ALL: [VolumetricClass; 5] = [
        VolumetricClass(1),
        VolumetricClass(2),
        VolumetricClass(3),
        VolumetricClass(4),
        VolumetricClass(5),
    ];

    pub fn new(k: u32) -> Result<Self> {
        match k {
            1..=5 => Ok(VolumetricClass(k as u8)),
            _ => Err(Error::Domain(format!("volumetric class must be in 1..=5, got {k}"))),
        }
    }

    pub fn k(self) -> u32 {
        self.0 as u32
    }

    /// Largest width tested by default; keeps depth near or below ~3000.
    pub fn default_n_max(self) -> usize {
        match self.0 {
            1 | 2 => 8,
            3 => 6,
            _ => 5,
        }
    }

    /// The next class up, saturating at QV-5.
    pub fn raised(self) -> Option<Self> {
        (self.0 < 5).then_some(VolumetricClass(self.0 + 1))
    }
}

impl TryFrom<u8> for VolumetricClass {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        VolumetricClass::new(k as u32)
    }
}

impl From<VolumetricClass> for u8 {
    fn from(class: VolumetricClass) -> u8 {
        class.0
    }
}

impl fmt::Display for VolumetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QV-{}", self.0)
    }
}

/// `(n, n^k)`.
pub fn shape(class: VolumetricClass, n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::Domain(format!("circuit width must be at least 2, got {n}")));
    }
    let depth = n
        .checked_pow(class.k())
        .ok_or_else(|| Error::Domain(format!("depth {n}^{} overflows", class.k())))?;
    Ok((n, depth))
}

/// `⌊x^(1/k)⌋` for integers.
pub fn integer_root(x: usize, k: u32) -> usize {
    if k == 1 {
        return x;
    }
    let mut r = 0usize;
    while (r + 1).checked_pow(k).is_some_and(|p| p <= x) {
        r += 1;
    }
    r
}

/// `min(n, d^(1/k))` of an achieved shape, the per-shape term of the score.
pub fn achieved_shape_score(class: VolumetricClass, n: usize, depth: usize) -> usize {
    n.min(integer_root(depth, class.k()))
}

/// `2^score`, the exponential quantum volume matching a QV-1 score.
pub fn qv1_to_quantum_volume(score: u32) -> Result<u64> {
    if score > 62 {
        return Err(Error::Overflow(score));
    }
    Ok(1u64 << score)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProtocolConfig {
    pub circuits: usize,
    pub shots: u64,
    pub pairing: Pairing,
    pub topology: TopologyKind,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            circuits: 100,
            shots: 1000,
            pairing: Pairing::Adjacent,
            topology: TopologyKind::AllToAll,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WidthResult {
    pub n: usize,
    pub depth: usize,
    pub heavy: HeavyOutputResult,
    /// Largest physical depth over the circuits after routing.
    pub routed_depth: usize,
    /// Mean number of routing SWAPs per circuit.
    pub mean_swaps: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VolumetricScore {
    pub class: VolumetricClass,
    pub score: usize,
    pub n_max: usize,
    pub widths: Vec<WidthResult>,
    pub config_digest: String,
}

impl VolumetricScore {
    /// `max over passing widths of min(n, depth^(1/k))`.
    pub fn formula_score(&self) -> usize {
        self.widths
            .iter()
            .filter(|w| w.heavy.passed)
            .map(|w| achieved_shape_score(self.class, w.n, w.depth))
            .max()
            .unwrap_or(0)
    }
}

/// Runs independent work items, possibly in parallel. Results come back in
/// index order.
pub trait Executor {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// Seed of circuit `index` of the width-`n` test in `class`; its child 0
/// draws the circuit and child 1 the shots.
pub fn circuit_seed(root: &SeedSpec, class: VolumetricClass, n: usize, index: usize) -> SeedSpec {
    root.child(class.k() as u64).child(n as u64).child(index as u64)
}

struct CircuitOutcome {
    hop: f64,
    physical_depth: usize,
    swaps: usize,
}

fn run_circuit(
    class: VolumetricClass,
    n: usize,
    depth: usize,
    index: usize,
    noise: &NoiseModel,
    config: &ProtocolConfig,
    root: &SeedSpec,
) -> Result<CircuitOutcome> {
    let seed = circuit_seed(root, class, n, index);
    let circuit = build_model_circuit(n, depth, &seed.child(0), config.pairing)?;
    let ideal = sim::ideal_probabilities(&circuit)?;
    let heavy_set = heavy::heavy_set(&ideal);
    let topology = Topology::new(config.topology, n)?;
    let routed = route_circuit(&circuit, &topology)?;
    let counts = sim::sample_program(&routed.program, noise, config.shots, &seed.child(1))?;
    Ok(CircuitOutcome {
        hop: heavy::hop_estimate(&counts, &heavy_set),
        physical_depth: routed.physical_depth,
        swaps: routed.swap_count,
    })
}

/// Heavy-output test at width `n` for `class`; deterministic per `seed`.
pub fn run_width_test<E: Executor>(
    class: VolumetricClass,
    n: usize,
    noise: &NoiseModel,
    config: &ProtocolConfig,
    seed: &SeedSpec,
    executor: &E,
) -> Result<WidthResult> {
    let (width, depth) = shape(class, n)?;
    noise.validate()?;
    sim::check_cap("state-vector", width, sim::STATE_VECTOR_CAP)?;
    if config.circuits < 2 {
        return Err(Error::Domain(format!("need at least 2 circuits, got {}", config.circuits)));
    }
    if config.shots == 0 {
        return Err(Error::Domain("shots must be at least 1".into()));
    }

    let outcomes = executor.map(config.circuits, |i| run_circuit(class, n, depth, i, noise, config, seed));
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    let hops: Vec<f64> = outcomes.iter().map(|o| o.hop).collect();
    let heavy = match heavy::evaluate_pass(&hops, config.shots) {
        Ok(result) => result,
        Err(Error::Degenerate { .. }) => HeavyOutputResult::not_passed(&hops, config.shots),
        Err(e) => return Err(e),
    };
    Ok(WidthResult {
        n,
        depth,
        heavy,
        routed_depth: outcomes.iter().map(|o| o.physical_depth).max().unwrap_or(depth),
        mean_swaps: outcomes.iter().map(|o| o.swaps as f64).sum::<f64>() / outcomes.len() as f64,
    })
}

/// Short digest of everything that determines a score.
pub fn config_digest(
    class: VolumetricClass,
    noise: &NoiseModel,
    config: &ProtocolConfig,
    n_max: usize,
    seed: &SeedSpec,
) -> String {
    let canonical = format!(
        "k={};n_max={};circuits={};shots={};pairing={};topology={};p1={:?};p2={:?};p_swap={:?};p_readout={:?};seed={};path={:?};rng={}",
        class.k(),
        n_max,
        config.circuits,
        config.shots,
        config.pairing.as_str(),
        config.topology,
        noise.p1,
        noise.p2,
        noise.p_swap,
        noise.p_readout,
        seed.master_seed,
        seed.stream_path,
        RNG_ALGORITHM,
    );
    // FNV-1a
    let hash = canonical
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3));
    format!("{hash:016x}")
}

/// QV-k score with a contiguous passing prefix of widths `2..=n_max`.
pub fn compute_score<E: Executor>(
    class: VolumetricClass,
    noise: &NoiseModel,
    config: &ProtocolConfig,
    n_max: usize,
    seed: &SeedSpec,
    executor: &E,
) -> Result<VolumetricScore> {
    if n_max < 2 {
        return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut widths = Vec::new();
    let mut score = 0;
    for n in 2..=n_max {
        let result = run_width_test(class, n, noise, config, seed, executor)?;
        let passed = result.heavy.passed;
        widths.push(result);
        if !passed {
            break;
        }
        score = n;
    }
    Ok(VolumetricScore {
        class,
        score,
        n_max,
        widths,
        config_digest: config_digest(class, noise, config, n_max, seed),
    })
}
