//! `volbench` command line.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 invalid flags or
//! input, 3 simulator capacity exceeded, 4 `tables --check` mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use volbench_core::random::build_model_circuit;
use volbench_core::sim::{noisy_distribution_exact, sample_noisy_trajectory, ideal_probabilities};
use volbench_core::survey::{classify_adjusted, classify_initial, reference, EstimateType, ScalingDescriptor};
use volbench_core::{NoiseModel, Pairing, SeedSpec, TopologyKind, VolumetricClass};

use crate::executor::RayonExecutor;
use crate::run::{execute, PartialConfig, PartialNoise, RunConfig};
use crate::{circuit_io, counts_io, dataset};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "volbench", version, about = "Volumetric quantum benchmarks: QV-1 … QV-5 scores and survey tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score one or more volumetric classes under a noise model.
    Run(RunArgs),
    /// Volumetric class of a depth-scaling expression.
    Classify(ClassifyArgs),
    /// Reproduce the survey class tables from a dataset.
    Tables(TablesArgs),
    /// Generate or simulate single circuits.
    #[command(subcommand)]
    Circuit(CircuitCommand),
}

#[derive(Args, Debug, Default)]
struct NoiseArgs {
    /// Depolarizing probability per idle qubit per layer.
    #[arg(long)]
    p1: Option<f64>,
    /// Depolarizing probability per two-qubit gate.
    #[arg(long)]
    p2: Option<f64>,
    /// Depolarizing probability per routing SWAP.
    #[arg(long = "p-swap")]
    p_swap: Option<f64>,
    /// Bit-flip probability per measured qubit.
    #[arg(long = "p-readout")]
    p_readout: Option<f64>,
}

impl NoiseArgs {
    fn partial(&self) -> Option<PartialNoise> {
        let noise = PartialNoise { p1: self.p1, p2: self.p2, p_swap: self.p_swap, p_readout: self.p_readout };
        (noise != PartialNoise::default()).then_some(noise)
    }

    fn model(&self) -> Result<NoiseModel, CliError> {
        NoiseModel::new(
            self.p1.unwrap_or(0.0),
            self.p2.unwrap_or(0.0),
            self.p_swap.unwrap_or(0.0),
            self.p_readout.unwrap_or(0.0),
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Class to score: 1…5 or `all`.
    #[arg(long = "class", value_parser = parse_classes)]
    classes: Option<ClassSelection>,
    /// Largest width tested (default depends on the class).
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Random circuits per width.
    #[arg(long)]
    circuits: Option<usize>,
    /// Shots per circuit.
    #[arg(long)]
    shots: Option<u64>,
    #[command(flatten)]
    noise: NoiseArgs,
    /// all2all, line, ring, grid or grid:WxH.
    #[arg(long)]
    topology: Option<TopologyKind>,
    /// Gate pairing inside a layer: adjacent or random-disjoint.
    #[arg(long)]
    pairing: Option<Pairing>,
    /// Master seed (falls back to the config file, then VOLBENCH_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// JSON configuration file, or a previous report to replay.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Does not affect results.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Report path; `-` writes the report to standard output.
    #[arg(long, default_value = "volbench-report.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Depth scaling such as `n^2`, `n^3*log`, `sqrt(n)*polylog`, `1`.
    #[arg(long)]
    scaling: String,
    /// gate-depth, gate-count or runtime.
    #[arg(long)]
    estimate: EstimateType,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Dataset CSV; the bundled survey when omitted.
    #[arg(long)]
    dataset: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Compare against the published counts; exit 4 on any difference.
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand, Debug)]
enum CircuitCommand {
    /// Write a random model circuit as JSON.
    Gen {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, env = "VOLBENCH_SEED", default_value_t = crate::run::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "adjacent")]
        pairing: Pairing,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Ideal probabilities, or noisy counts when `--shots` is given.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        /// Sample this many noisy shots instead of printing probabilities.
        #[arg(long)]
        shots: Option<u64>,
        /// Exact noisy distribution from the density-matrix engine.
        #[arg(long, conflicts_with = "shots")]
        exact: bool,
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, env = "VOLBENCH_SEED", default_value_t = crate::run::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
}

/// Wrapped so clap treats the list as one value.
#[derive(Clone, Debug)]
struct ClassSelection(Vec<VolumetricClass>);

fn parse_classes(text: &str) -> Result<ClassSelection, String> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(ClassSelection(VolumetricClass::ALL.to_vec()));
    }
    text.split(',')
        .map(|k| {
            let k: u32 = k.trim().parse().map_err(|_| format!("`{k}` is not a class number"))?;
            VolumetricClass::new(k).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()
        .map(ClassSelection)
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Capacity(String),
    Check(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Capacity(_) => EXIT_CAPACITY,
            CliError::Check(_) => EXIT_CHECK,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Capacity(m) | CliError::Check(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<volbench_core::Error> for CliError {
    fn from(e: volbench_core::Error) -> Self {
        match e {
            volbench_core::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Failure(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: &Path, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let result = if path.as_os_str() == "-" {
        writeln!(stdout, "{text}")
    } else {
        std::fs::write(path, format!("{text}\n"))
    };
    result.map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

/// Precedence: flags > config file > VOLBENCH_SEED (seed only) > defaults.
fn resolve_config(args: &RunArgs, env_seed: Option<String>) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::default();
    if let Some(seed) = env_seed {
        config.seed = seed
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("VOLBENCH_SEED `{seed}` is not an unsigned 64-bit integer")))?;
    }
    if let Some(path) = &args.config {
        let file = PartialConfig::from_json(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        config = file.apply(config);
    }
    let flags = PartialConfig {
        classes: args.classes.as_ref().map(|c| c.0.clone()),
        n_max: args.n_max,
        circuits: args.circuits,
        shots: args.shots,
        noise: args.noise.partial(),
        topology: args.topology,
        pairing: args.pairing,
        seed: args.seed,
        rng: None,
    };
    let config = flags.apply(config);
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(config)
}

fn cmd_run(args: RunArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = resolve_config(&args, std::env::var("VOLBENCH_SEED").ok())?;
    let executor = RayonExecutor::new(args.jobs).map_err(|e| CliError::Failure(e.to_string()))?;
    let report = execute(&config, &executor, executor.threads())?;
    if args.out.as_os_str() == "-" {
        emit(&args.out, &report.to_json(), stdout)
    } else {
        emit(&args.out, &report.to_json(), stdout)?;
        write!(stdout, "{}report written to {}\n", report.summary(), args.out.display())
            .map_err(|e| CliError::Failure(e.to_string()))
    }
}

fn cmd_classify(args: ClassifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let scaling: ScalingDescriptor = args.scaling.parse().map_err(|e: volbench_core::Error| CliError::Usage(e.to_string()))?;
    if !scaling.is_conformant() {
        let _ = writeln!(stderr, "warning: `{}` is not one of the eleven surveyed scaling forms", args.scaling);
    }
    let usage = |e: volbench_core::Error| CliError::Usage(e.to_string());
    let initial = classify_initial(&scaling).map_err(usage)?;
    let adjusted = classify_adjusted(&scaling, args.estimate).map_err(usage)?;
    let text = if args.json {
        serde_json::json!({
            "scaling": scaling.label(),
            "estimate_type": args.estimate.as_str(),
            "initial": initial.k(),
            "adjusted": adjusted.k(),
        })
        .to_string()
    } else {
        format!("{}  {}\ninitial   {initial}\nadjusted  {adjusted}", scaling.label(), args.estimate)
    };
    writeln!(stdout, "{text}").map_err(|e| CliError::Failure(e.to_string()))
}

fn cmd_tables(args: TablesArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let records = match &args.dataset {
        Some(path) => dataset::load_dataset(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => dataset::bundled(),
    };
    let text = if args.json {
        serde_json::to_string_pretty(&dataset::tables_json(&records)?).expect("tables serialize")
    } else {
        dataset::render_tables(&records)?
    };
    writeln!(stdout, "{text}").map_err(|e| CliError::Failure(e.to_string()))?;
    if args.check {
        let mismatches = reference::check(&records)?;
        if let Some(first) = mismatches.first() {
            let _ = writeln!(stderr, "{} cell(s) differ from the published counts", mismatches.len());
            return Err(CliError::Check(format!("first mismatch: {first}")));
        }
        let _ = writeln!(stderr, "all counts match the published tables");
    }
    Ok(())
}

fn cmd_circuit(command: CircuitCommand, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        CircuitCommand::Gen { width, depth, seed, pairing, out } => {
            let circuit = build_model_circuit(width, depth, &SeedSpec::new(seed), pairing)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&out, &circuit_io::to_json_pretty(&circuit), stdout)
        }
        CircuitCommand::Simulate { input, shots, exact, noise, seed, out } => {
            let circuit = circuit_io::from_json(&read(&input)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?;
            let noise = noise.model()?;
            let text = match shots {
                Some(0) => return Err(CliError::Usage("shots must be at least 1".into())),
                Some(shots) => counts_io::counts_to_json(&sample_noisy_trajectory(&circuit, &noise, shots, &SeedSpec::new(seed))?),
                None if exact => counts_io::probabilities_to_json(&noisy_distribution_exact(&circuit, &noise)?),
                None => {
                    if !noise.is_noiseless() {
                        return Err(CliError::Usage("noise flags need --shots or --exact".into()));
                    }
                    counts_io::probabilities_to_json(&ideal_probabilities(&circuit)?)
                }
            };
            emit(&out, &text, stdout)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Run(args) => cmd_run(args, stdout),
        Command::Classify(args) => cmd_classify(args, stdout, stderr),
        Command::Tables(args) => cmd_tables(args, stdout, stderr),
        Command::Circuit(command) => cmd_circuit(command, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}
