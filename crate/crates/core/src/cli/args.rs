use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use crate::lattice::{parse_rational, ExtendedExponent, Rational};
use crate::regions::RegionKind;
use crate::rihaczek::Target;

fn exponent(s: &str) -> Result<ExtendedExponent, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("cannot parse {s:?} as a decimal or fraction a/b"))
}

fn positive_real(s: &str) -> Result<f64, String> {
    let r = rational(s)?;
    let v = *r.numer() as f64 / *r.denom() as f64;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} is not positive"))
    }
}

fn region(s: &str) -> Result<RegionKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Time-frequency analysis on finite periodic lattices.
#[derive(Debug, Parser)]
#[command(name = "tfsharp", version, args_override_self = true)]
pub struct Cli {
    /// JSON file supplying defaults for the subcommand's flags
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a boundedness region at one exponent point and print the verdict JSON
    #[command(args_override_self = true)]
    Check(CheckArgs),
    /// Sweep one or two exponents over a range and emit a CSV of verdicts
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Compute a modulation, Fourier-modulation, Wiener amalgam or Lebesgue norm
    #[command(args_override_self = true)]
    Norm(NormArgs),
    /// Compute a Rihaczek distribution or check its STFT closed form
    #[command(args_override_self = true)]
    Rihaczek(RihaczekArgs),
    /// Run a scaling, star-growth or Khinchin experiment
    #[command(args_override_self = true)]
    Experiment(ExperimentArgs),
}

/// Exponent inputs shared by `check` and `scan`.
#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    /// Region: brwm, brwf, conv, star_conv, tau_embed, local_brwm, bpwm, bpwf, bessel, fourier_embed
    #[arg(long, value_parser = region)]
    pub kind: RegionKind,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_parser = exponent)]
    pub p: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent)]
    pub q: Option<ExtendedExponent>,
    /// Comma-separated p_0..p_m
    #[arg(long, value_parser = exponent, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub pj: Option<Vec<ExtendedExponent>>,
    /// Comma-separated q_0..q_m
    #[arg(long, value_parser = exponent, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub qj: Option<Vec<ExtendedExponent>>,
    #[arg(long, value_parser = exponent)]
    pub p1: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent)]
    pub q1: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent)]
    pub p2: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent)]
    pub q2: Option<ExtendedExponent>,
    /// Smoothness, exact decimal or fraction
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub s: Option<Rational>,
    /// Dimension for the smoothness thresholds
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub region: RegionArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    /// NAME=START:STOP:STEP, swept in reciprocal units (1/p) except for `s`; NAME is p, q, p1, q1, p2, q2, pjK, qjK or s
    #[arg(long)]
    pub sweep: String,
    /// Optional second sweep, varied fastest
    #[arg(long)]
    pub sweep2: Option<String>,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Modulation,
    FourierModulation,
    Wiener,
    Lebesgue,
}

#[derive(Debug, Clone, Args)]
pub struct NormArgs {
    /// Signal JSON file, or a phase-space file written by `rihaczek`
    #[arg(long, value_name = "FILE")]
    pub signal: PathBuf,
    #[arg(long, value_enum)]
    pub space: Space,
    #[arg(long, value_parser = exponent)]
    pub p: ExtendedExponent,
    #[arg(long, value_parser = exponent, default_value = "inf")]
    pub q: ExtendedExponent,
    /// Window signal JSON; defaults to a Gaussian of `--window-width`
    #[arg(long, value_name = "FILE")]
    pub window: Option<PathBuf>,
    #[arg(long, value_parser = positive_real, default_value = "1")]
    pub window_width: f64,
    /// Weight JSON: on R^{2d} for modulation spaces, on R^d for Wiener amalgams
    #[arg(long, value_name = "FILE")]
    pub weight: Option<PathBuf>,
    /// Partition step in lattice points (Wiener amalgams); defaults to N
    #[arg(long)]
    pub step: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RihaczekArgs {
    /// First input `g` (signal JSON)
    #[arg(long, value_name = "FILE")]
    pub g: Option<PathBuf>,
    /// Remaining inputs `f_1..f_m`, comma-separated
    #[arg(long, value_name = "FILES", value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub f: Option<Vec<PathBuf>>,
    /// Write the distribution JSON here instead of stdout
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Compare the STFT closed form with the direct STFT and print the residual
    #[arg(long)]
    pub check_identity: bool,
    /// Number of inputs after `g` for random trials
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long = "N", default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Lattice spacing; defaults to the balanced value N^{-1/2}
    #[arg(long, value_parser = positive_real)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Scaling,
    Khinchin,
    StarGrowth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedTuple {
    /// m=1, p=q=1, p_j=q_j=2
    UnboundedDemo,
    /// m=1, all exponents 2
    BoundedDemo,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub kind: ExperimentKind,
    /// Named exponent tuple for `scaling`
    #[arg(long, value_enum)]
    pub tuple: Option<NamedTuple>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_parser = exponent)]
    pub p: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent)]
    pub q: Option<ExtendedExponent>,
    #[arg(long, value_parser = exponent, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub pj: Option<Vec<ExtendedExponent>>,
    #[arg(long, value_parser = exponent, value_delimiter = ',', num_args = 1.., action = ArgAction::Set)]
    pub qj: Option<Vec<ExtendedExponent>>,
    /// Target space for `scaling`: modulation or fourier_modulation
    #[arg(long, value_parser = target, default_value = "modulation")]
    pub target: Target,
    #[arg(long = "N", default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Dilations for `scaling`
    #[arg(long, value_parser = positive_real, value_delimiter = ',', num_args = 1.., action = ArgAction::Set, default_value = "1,1/2,1/4,1/8,1/16")]
    pub lambdas: Vec<f64>,
    /// Truncation sizes for `star-growth`
    #[arg(long, value_delimiter = ',', num_args = 1.., action = ArgAction::Set, default_value = "8,16,32,64,128")]
    pub sizes: Vec<usize>,
    /// Number of unit coefficients for `khinchin`
    #[arg(long, default_value_t = 64)]
    pub count: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Length of the exhaustively enumerated prefix for `khinchin`
    #[arg(long, default_value_t = 10)]
    pub prefix: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Allowed |slope - predicted| (or relative Khinchin deviation); defaults depend on the kind
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Khinchin acceptance band LO,HI for the empirical ratio
    #[arg(long, value_delimiter = ',', num_args = 2, action = ArgAction::Set)]
    pub band: Option<Vec<f64>>,
    /// Write the (parameter, ratio) CSV here
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Write the JSON report here as well as to stdout
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}
