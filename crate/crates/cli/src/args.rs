use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ajc", version, about = "Anti-Jaynes-Cummings dynamics, entanglement and teleportation datasets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch-sphere trajectories of the doublet qubit.
    Bloch(BlochArgs),
    /// Atomic populations and entanglement entropy against scaled time.
    Entropy(EntropyArgs),
    /// Closed-form doublet amplitudes, cross-checked against exp(-iHt).
    Evolve(EvolveArgs),
    /// Entanglement-swapping protocol report.
    Teleport(TeleportArgs),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    JsonSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelChoice {
    Ajc,
    Jc,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Frame {
    /// Pauli expectations in the orthonormal doublet `{|e,·⟩, |g,·⟩}`.
    Embedded,
    /// Two-level form on the `{ψ, φ}` pair: `(0, −sin 2Rt, cos 2Rt)`.
    Subspace,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Field frequency ω/λ.
    #[arg(long, default_value_t = 2.0, value_parser = finite, allow_negative_numbers = true)]
    pub omega_over_lambda: f64,
    /// Photon index n of the initial state.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Fock cutoff; defaults to max(8, n + 2).
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Number of time samples (at least 2).
    #[arg(long, value_parser = samples)]
    pub samples: Option<usize>,
    /// End of the time grid in units of 1/λ.
    #[arg(long, value_parser = positive)]
    pub tmax: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BlochArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Detuning δ/λ per curve; repeatable. Default 1, 3, 0.
    #[arg(long, value_parser = finite, allow_negative_numbers = true, conflicts_with = "deltabar_over_lambda")]
    pub delta_over_lambda: Vec<f64>,
    /// Sum frequency δ̄/λ per curve; repeatable, replaces the detuning list.
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub deltabar_over_lambda: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModelChoice::Both)]
    pub model: ModelChoice,
    #[arg(long, value_enum, default_value_t = Frame::Embedded)]
    pub frame: Frame,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Also write a gnuplot script that plots the CSV (needs --output).
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Sum frequency δ̄/λ.
    #[arg(long, default_value_t = 2.0, value_parser = finite, allow_negative_numbers = true)]
    pub deltabar_over_lambda: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Also write a gnuplot script that plots the CSV (needs --output).
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Detuning δ/λ.
    #[arg(long, default_value_t = 1.0, value_parser = finite, allow_negative_numbers = true, conflicts_with = "deltabar_over_lambda")]
    pub delta_over_lambda: f64,
    /// Sum frequency δ̄/λ; overrides the detuning.
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub deltabar_over_lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModelChoice::Ajc)]
    pub model: ModelChoice,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    /// Detuning δ/λ of the AJC interaction that prepares Bob's pair.
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub resource_delta_over_lambda: f64,
    /// Field frequency ω/λ.
    #[arg(long, default_value_t = 2.0, value_parser = finite, allow_negative_numbers = true)]
    pub omega_over_lambda: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub random_cases: usize,
    /// Test hook: perturb H_AJC off its conserved blocks by this amount.
    #[arg(long, hide = true, value_parser = finite)]
    pub perturb_ajc: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be > 0, got {s}"))
    }
}

fn samples(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n >= 2 {
        Ok(n)
    } else {
        Err(format!("need at least 2 samples, got {n}"))
    }
}
