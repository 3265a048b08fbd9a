//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcoulomb::numeric::scalar::parse_rational;
use pcoulomb::Rational;

#[derive(Parser, Debug, Clone)]
#[command(name = "pcoulomb", version, about = "Bound states of -a/r + b/(r+1): exact polynomial solutions, Riccati-Pade spectra and a finite-difference cross-check")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format (`check` defaults to json, everything else to csv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Working precision of the numeric phase, rounded up to 64, 128, 256, 512 or 1024.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision_bits: u32,
    /// Successive-D convergence tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Largest Hankel dimension.
    #[arg(long = "max-D", global = true, default_value_t = 24)]
    pub max_d: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Conditionally exact solutions of polynomial degree n.
    Exact(ExactArgs),
    /// Lowest levels from stabilised Hankel-determinant roots.
    Rpm(RpmArgs),
    /// Energy curves over a range of b plus the exact points inside it.
    Scan(ScanArgs),
    /// Cross-check the methods at one coupling.
    Check(CheckArgs),
    /// Reduced couplings and units for physical parameters.
    Units(UnitsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub a: Rational,
}

#[derive(Args, Debug, Clone)]
pub struct RpmArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Highest level index reported.
    #[arg(long, default_value_t = 3)]
    pub nu_max: usize,
    /// Hankel displacement.
    #[arg(long, default_value_t = 0)]
    pub d: usize,
    /// Dimensions handled symbolically.
    #[arg(long, default_value_t = 8)]
    pub exact_cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub a: Rational,
    /// Angular momenta, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub l: Vec<u32>,
    /// Level indices, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub nu: Vec<usize>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub b_lo: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub b_hi: Rational,
    /// Grid intervals between b_lo and b_hi.
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    /// Largest polynomial degree in the exact-point sweep.
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long, default_value_t = 3)]
    pub nu_max: usize,
    /// Step of the central difference in b.
    #[arg(long, value_parser = rational, default_value = "1e-4")]
    pub db: Rational,
    /// Largest degree searched for an exact solution at this b.
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
}

#[derive(Args, Debug, Clone)]
pub struct UnitsArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub v1: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub v2: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub r0: Rational,
    #[arg(long, value_parser = rational, default_value = "1")]
    pub m: Rational,
    #[arg(long, value_parser = rational, default_value = "1")]
    pub hbar: Rational,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}
