//! Command-line front end: JSON reports and CSV tables for the
//! quantum-defect library.

pub mod commands;
pub mod error;
pub mod report;
pub mod transitions;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "rydberg1d",
    version,
    about = "Surface-state spectra of electrons above a dielectric"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coupling, surface Rydberg and Bohr radius for a dielectric constant.
    Constants(ConstantsArgs),
    /// Quantum-defect levels as CSV.
    Spectrum(SpectrumArgs),
    /// Sampled eigenfunction as CSV.
    Wavefunction(WavefunctionArgs),
    /// Fit (ℰ₀, δ) to measured transitions.
    Fit(FitArgs),
    /// Matrix element ⟨j*|xᵗ|k*⟩.
    MatrixElement(MatrixElementArgs),
    /// Cross-check closed forms against numerical oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = rydberg1d_core::model::constants::HELIUM_EPSILON)]
    pub epsilon: f64,
    /// Rydberg energy in eV.
    #[arg(long)]
    pub rydberg_ev: Option<f64>,
    /// Bohr radius in Å.
    #[arg(long)]
    pub bohr_angstrom: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub e0_ghz: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub nmax: u32,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Largest abscissa in units of x₀.
    #[arg(long)]
    pub xmax_x0: f64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
    /// Sample the isospectral partner state instead.
    #[arg(long)]
    pub isospectral: bool,
    #[arg(long, default_value_t = rydberg1d_core::isospectral::DEFAULT_R, allow_negative_numbers = true)]
    pub bigr: f64,
    /// Report lengths in Å (requires --epsilon).
    #[arg(long, requires = "epsilon")]
    pub angstrom: bool,
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Weighted Gauss-Newton fit over all lines instead of the exact two-line solve.
    #[arg(long)]
    pub least_squares: bool,
}

#[derive(Debug, Args)]
pub struct MatrixElementArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub bra: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub ket: u32,
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Length unit; 1 gives units of x₀.
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0.0237)]
    pub delta: f64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub nmax: u32,
    #[arg(long, default_value_t = rydberg1d_core::isospectral::DEFAULT_R, allow_negative_numbers = true)]
    pub bigr: f64,
}

/// Output of a command plus whether verification failed.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub failed_checks: usize,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    use commands::*;
    match &cli.command {
        Command::Constants(a) => constants(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Wavefunction(a) => wavefunction(a),
        Command::Fit(a) => fit(a),
        Command::MatrixElement(a) => matrix_element(a),
        Command::Verify(a) => verify(a),
    }
}
