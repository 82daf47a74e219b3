//! Benchmark runs: configuration, execution and the JSON report.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use volbench_core::protocol::{compute_score, qv1_to_quantum_volume, Executor};
use volbench_core::seed::RNG_ALGORITHM;
use volbench_core::sim::STATE_VECTOR_CAP;
use volbench_core::{
    NoiseModel, Pairing, ProtocolConfig, SeedSpec, Topology, TopologyKind, VolumetricClass, VolumetricScore,
};

pub const DEFAULT_SEED: u64 = 1;
pub const NOISE_MODEL_NOTE: &str =
    "depolarizing after every gate (p2), routing SWAP (p_swap) and idle position per layer (p1); independent readout flips (p_readout); permutations noiseless";

/// Everything that determines the numbers in a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub classes: Vec<VolumetricClass>,
    /// `None`: the per-class default (8 for QV-1/2, 6 for QV-3, 5 for QV-4/5).
    pub n_max: Option<usize>,
    pub circuits: usize,
    pub shots: u64,
    pub noise: NoiseModel,
    pub topology: TopologyKind,
    pub pairing: Pairing,
    pub seed: u64,
    pub rng: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        let protocol = ProtocolConfig::default();
        RunConfig {
            classes: vec![VolumetricClass::new(1).expect("class 1 exists")],
            n_max: None,
            circuits: protocol.circuits,
            shots: protocol.shots,
            noise: NoiseModel::ideal(),
            topology: protocol.topology,
            pairing: protocol.pairing,
            seed: DEFAULT_SEED,
            rng: RNG_ALGORITHM.to_string(),
        }
    }
}

/// A configuration file: every field optional, unset fields fall through to
/// the next layer of precedence.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub classes: Option<Vec<VolumetricClass>>,
    pub n_max: Option<usize>,
    pub circuits: Option<usize>,
    pub shots: Option<u64>,
    pub noise: Option<PartialNoise>,
    pub topology: Option<TopologyKind>,
    pub pairing: Option<Pairing>,
    pub seed: Option<u64>,
    pub rng: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialNoise {
    pub p1: Option<f64>,
    pub p2: Option<f64>,
    pub p_swap: Option<f64>,
    pub p_readout: Option<f64>,
}

impl PartialConfig {
    /// Accepts a bare configuration or a full report, whose `config` is used.
    pub fn from_json(text: &str) -> Result<Self, crate::FormatError> {
        let value: serde_json::Value = crate::error::decode_json(text)?;
        let config = match value.get("config") {
            Some(inner) if value.get("scores").is_some() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(config).map_err(|e| crate::FormatError::Schema(e.to_string()))
    }

    /// Fields set in `self` override `base`.
    pub fn apply(&self, mut base: RunConfig) -> RunConfig {
        if let Some(v) = &self.classes {
            base.classes = v.clone();
        }
        if self.n_max.is_some() {
            base.n_max = self.n_max;
        }
        if let Some(v) = self.circuits {
            base.circuits = v;
        }
        if let Some(v) = self.shots {
            base.shots = v;
        }
        if let Some(noise) = &self.noise {
            base.noise.p1 = noise.p1.unwrap_or(base.noise.p1);
            base.noise.p2 = noise.p2.unwrap_or(base.noise.p2);
            base.noise.p_swap = noise.p_swap.unwrap_or(base.noise.p_swap);
            base.noise.p_readout = noise.p_readout.unwrap_or(base.noise.p_readout);
        }
        if let Some(v) = self.topology {
            base.topology = v;
        }
        if let Some(v) = self.pairing {
            base.pairing = v;
        }
        if let Some(v) = self.seed {
            base.seed = v;
        }
        if let Some(v) = &self.rng {
            base.rng = v.clone();
        }
        base
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

impl RunConfig {
    pub fn protocol(&self) -> ProtocolConfig {
        ProtocolConfig { circuits: self.circuits, shots: self.shots, pairing: self.pairing, topology: self.topology }
    }

    pub fn n_max_for(&self, class: VolumetricClass) -> usize {
        self.n_max.unwrap_or_else(|| class.default_n_max())
    }

    /// Checks everything that can be rejected before any simulation starts.
    /// Widths beyond the simulator cap are left to the run (capacity error).
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(ConfigError(msg));
        if self.classes.is_empty() {
            return fail("no class selected".into());
        }
        if self.rng != RNG_ALGORITHM {
            return fail(format!("report was produced with rng `{}`, this build uses `{RNG_ALGORITHM}`", self.rng));
        }
        if let Some(n) = self.n_max {
            if n < 2 {
                return fail(format!("n-max must be at least 2, got {n}"));
            }
        }
        if self.circuits < 2 {
            return fail(format!("circuits must be at least 2, got {}", self.circuits));
        }
        if self.shots == 0 {
            return fail("shots must be at least 1".into());
        }
        self.noise.validate().map_err(|e| ConfigError(e.to_string()))?;
        for &class in &self.classes {
            let n = self.n_max_for(class);
            if matches!(self.topology, TopologyKind::Grid(Some(_))) {
                // an explicit grid fixes the width; only meaningful if every width fits it
                for width in 2..=n {
                    Topology::new(self.topology, width).map_err(|e| ConfigError(e.to_string()))?;
                }
            }
            if self.pairing == Pairing::RandomDisjoint && self.topology != TopologyKind::AllToAll {
                return fail("random-disjoint pairing needs the all2all topology".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    #[serde(flatten)]
    pub score: VolumetricScore,
    /// `2^score`, reported for QV-1 only.
    pub quantum_volume: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoutingRow {
    pub class: VolumetricClass,
    pub n: usize,
    pub logical_depth: usize,
    pub routed_depth: usize,
    pub mean_swaps: f64,
    /// `routed_depth / logical_depth`.
    pub depth_overhead: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoutingSummary {
    pub topology: TopologyKind,
    pub widths: Vec<RoutingRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
    pub per_class_seconds: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub tool_version: String,
    pub timestamp: String,
    pub config: RunConfig,
    pub noise_model: String,
    pub scores: Vec<ClassReport>,
    pub routing: RoutingSummary,
    pub jobs: usize,
    pub timings: Timings,
}

impl RunReport {
    /// The report without the fields that legitimately vary between
    /// identical runs (timestamp, timings, worker count).
    pub fn reproducible_part(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("reports always serialize");
        let object = value.as_object_mut().expect("report is an object");
        for key in ["timestamp", "timings", "jobs"] {
            object.remove(key);
        }
        value
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "volbench {}  seed {}  circuits {}  shots {}  topology {}  p1 {} p2 {} p_swap {} p_readout {}\n",
            self.tool_version,
            c.seed,
            c.circuits,
            c.shots,
            c.topology,
            c.noise.p1,
            c.noise.p2,
            c.noise.p_swap,
            c.noise.p_readout
        );
        for class in &self.scores {
            let s = &class.score;
            out += &format!("{}: score {} (n_max {})", s.class, s.score, s.n_max);
            if let Some(v) = class.quantum_volume {
                out += &format!("  quantum volume {v}");
            }
            out += "\n";
            for w in &s.widths {
                out += &format!(
                    "    n={:<2} depth={:<5} hop={:.4} ci_low={:.4} {}\n",
                    w.n,
                    w.depth,
                    w.heavy.pooled_hop,
                    w.heavy.ci_low,
                    if w.heavy.passed { "pass" } else { "FAIL" }
                );
            }
        }
        out += &format!("total {:.2}s on {} worker(s)\n", self.timings.total_seconds, self.jobs);
        out
    }
}

/// Runs every requested class. Results depend only on `config`.
pub fn execute<E: Executor>(config: &RunConfig, executor: &E, jobs: usize) -> volbench_core::Result<RunReport> {
    // fail before any work if a requested width cannot be simulated
    for &class in &config.classes {
        let width = config.n_max_for(class);
        if width > STATE_VECTOR_CAP {
            return Err(volbench_core::Error::Capacity { engine: "state-vector", width, cap: STATE_VECTOR_CAP });
        }
    }
    let start = Instant::now();
    let protocol = config.protocol();
    let seed = SeedSpec::new(config.seed);
    let mut scores = Vec::new();
    let mut routing = Vec::new();
    let mut per_class_seconds = Vec::new();
    for &class in &config.classes {
        let t = Instant::now();
        let score = compute_score(class, &config.noise, &protocol, config.n_max_for(class), &seed, executor)?;
        per_class_seconds.push(t.elapsed().as_secs_f64());
        routing.extend(score.widths.iter().map(|w| RoutingRow {
            class,
            n: w.n,
            logical_depth: w.depth,
            routed_depth: w.routed_depth,
            mean_swaps: w.mean_swaps,
            depth_overhead: w.routed_depth as f64 / w.depth as f64,
        }));
        let quantum_volume = if class.k() == 1 { qv1_to_quantum_volume(score.score as u32).ok() } else { None };
        scores.push(ClassReport { score, quantum_volume });
    }
    Ok(RunReport {
        tool: "volbench".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        timestamp: chrono::Utc::now().to_rfc3339(),
        config: config.clone(),
        noise_model: NOISE_MODEL_NOTE.into(),
        scores,
        routing: RoutingSummary { topology: config.topology, widths: routing },
        jobs,
        timings: Timings { total_seconds: start.elapsed().as_secs_f64(), per_class_seconds },
    })
}
