//! `defectwalk`: spectra, eigenvectors, dynamics, validation and figures for
//! the one-defect quantum walk.

mod commands;
mod figure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use defectwalk_core::oracle::Fault;
use defectwalk_core::InitialState;

#[derive(Parser, Debug)]
#[command(
    name = "defectwalk",
    version,
    about = "Spectral toolkit for the one-defect quantum walk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The four eigenvalues with modulus and region.
    Spectrum(SpectrumArgs),
    /// Closed-form eigenvector on a finite window.
    Eigvec(EigvecArgs),
    /// Iterate the walk from a localized start.
    Simulate(SimulateArgs),
    /// Cross-check the closed forms against the numerical oracles.
    Validate(ValidateArgs),
    /// Eigenvalue loci and essential spectrum as SVG plus CSV.
    Figure(FigureArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tolerance override: a number (complex equality) or `key=value,...`,
    /// applied after `DEFECTWALK_TOL`.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EigvecArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: f64,
    /// Eigenvalue index, 1..=4.
    #[arg(long)]
    pub index: usize,
    /// Half-width N of the window [-N, N].
    #[arg(long, default_value_t = 32)]
    pub window: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, default_value_t = 256)]
    pub window: usize,
    #[arg(long, value_enum, default_value_t = Initial::OriginUp)]
    pub initial: Initial,
    /// Also write the final normalized state as `x,reL,imL,reR,imR`.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Comma-separated defect parameters; defaults to the standard grid.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub omega_grid: Option<Vec<f64>>,
    /// Radial and angular resolution of the Newton seed grid.
    #[arg(long, default_value_t = 60)]
    pub seed_grid: usize,
    /// Corrupt a closed form on purpose to check that validation notices.
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultArg>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// `min,max` of the sampled defect parameters.
    #[arg(long, allow_hyphen_values = true, default_value = "-3,3")]
    pub omega_range: String,
    /// Evenly spaced samples over the range, before refinement near 0 and 1.
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    /// SVG destination; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV destination; defaults to the SVG path with a `.csv` extension.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initial {
    OriginUp,
    OriginDown,
    OriginSymmetric,
}

impl From<Initial> for InitialState {
    fn from(i: Initial) -> Self {
        match i {
            Initial::OriginUp => InitialState::OriginUp,
            Initial::OriginDown => InitialState::OriginDown,
            Initial::OriginSymmetric => InitialState::OriginSymmetric,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultArg {
    RMinusSign,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::RMinusSign => Fault::RMinusSign,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
