//! `ca184` command-line harness.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage error (bad arguments,
//! malformed manifest), 3 an asserted tolerance failed.

mod commands;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use output::Format;

pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ASSERTION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ca184",
    version,
    about = "Rule 184, ballistic annihilation and min-filter experiments"
)]
pub struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CA184_THREADS")]
    pub threads: Option<usize>,
    /// Directory for the data file and its manifest; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evolve a configuration or a height profile.
    Evolve(EvolveArgs),
    /// Convert between occupancy, trit and profile representations.
    Transform(TransformArgs),
    /// Annihilation partners of a trit configuration.
    Partners(PartnersArgs),
    /// Survival, first-return, neighbor-velocity and invariance statistics.
    Stats(StatsArgs),
    /// Flux of rule 184 on rings against 1/2 - |1/2 - rho|.
    Flux(FluxArgs),
    /// Second-class particle paths at a single phase boundary.
    PhaseSep(PhaseArgs),
    /// Large-scale statistics experiments.
    Hydro(HydroArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
    /// Time the scalar and packed rule-184 kernels.
    Bench(BenchArgs),
    /// Replay a manifest written by an earlier run.
    Run(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Evolve(_) => "evolve",
            Command::Transform(_) => "transform",
            Command::Partners(_) => "partners",
            Command::Stats(_) => "stats",
            Command::Flux(_) => "flux",
            Command::PhaseSep(_) => "phase-sep",
            Command::Hydro(_) => "hydro",
            Command::Verify(_) => "verify",
            Command::Bench(_) => "bench",
            Command::Run(_) => "run",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveArgs {
    /// Configuration text, e.g. `ca184:RING:8:10110010` or `ba:OPEN:0..5:+0-0+`.
    #[arg(long, conflicts_with = "profile")]
    pub config: Option<String>,
    /// Height profile CSV (`k,height`) to evolve by surface growth.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub steps: usize,
    /// Also emit the half-step rows of ballistic annihilation.
    #[arg(long)]
    pub half_rows: bool,
    /// For profiles: apply the sliding minimum of this radius instead.
    #[arg(long)]
    pub filter: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Ba,
    Ca,
    Profile,
    Balanced,
    Lambda,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformArgs {
    #[arg(long)]
    pub config: String,
    #[arg(long, value_enum)]
    pub to: Target,
    /// Occupancy of the first site when inverting a trit configuration.
    #[arg(long, default_value_t = 0)]
    pub anchor_bit: u8,
    /// Height of the first profile node.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub base: i64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartnersArgs {
    #[arg(long)]
    pub config: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatKind {
    Survival,
    FirstReturn,
    Neighbor,
    U2n,
    Invariance,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsArgs {
    #[arg(long, value_enum)]
    pub kind: StatKind,
    /// Comma-separated times.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Initial law: fair-pm, fair-ca, checkerboard, ca:P, ba:P+,P-,P0.
    #[arg(long, default_value = "fair-pm")]
    pub init: String,
    /// First return by exhaustive enumeration instead of sampling.
    #[arg(long)]
    pub exact: bool,
    /// Cylinder width for the invariance audit.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Fail when |estimate - reference| exceeds this many standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub max_z: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluxArgs {
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
    )]
    pub density: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub ring: usize,
    /// Defaults to ceil(ring / 2).
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.01)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseMode {
    Trace,
    Reconstruct,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathRule {
    Ba,
    Ca,
    CaAlternating,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseArgs {
    #[arg(long, value_enum)]
    pub mode: PhaseMode,
    /// Window to trace (trit or occupancy text).
    #[arg(long)]
    pub config: Option<String>,
    /// Path text, e.g. `path:HALF:0:4:--++`.
    #[arg(long)]
    pub path: Option<String>,
    /// Horizon in half ticks.
    #[arg(long, default_value_t = 16)]
    pub horizon: usize,
    #[arg(long, value_enum, default_value_t = PathRule::Ba)]
    pub rule: PathRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Plateau,
    Rescale,
    Decay,
    Segment,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HydroArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    /// Comma-separated scales or times.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Initial law for rescaling: fair-pm or fair-ca.
    #[arg(long, default_value = "fair-pm")]
    pub init: String,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "-1,0.5,2",
        allow_hyphen_values = true
    )]
    pub probes: Vec<f64>,
    /// Ring size for decay and segmentation.
    #[arg(long, default_value_t = 1 << 20)]
    pub ring: usize,
    #[arg(long, default_value_t = 8)]
    pub replicas: usize,
    /// Asserted tolerance: KS distance for plateaus, slope error for decay.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long, default_value = "exact")]
    pub suite: String,
    /// Only list the checks.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1 << 20)]
    pub size: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunArgs {
    pub manifest: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match commands::execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
