//! Command-line front end: `gwasym gen | convert | analyze`.

mod analyze;
mod convert;
mod gen;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::Precision;
use crate::{Error, Result};

pub use analyze::Analysis;

#[derive(Debug, Parser)]
#[command(name = "gwasym", version, about = "Exact GW/GV tables and their large-order asymptotics")]
pub struct Cli {
    /// Working precision in decimal digits (at least 50).
    #[arg(long, global = true, env = "GWASYM_PRECISION", default_value_t = 200)]
    pub precision: u32,

    /// Richardson order used by the fitters.
    #[arg(long, global = true, default_value_t = 3)]
    pub richardson_order: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a GW table from a geometry or a GV file.
    Gen(GenArgs),
    /// Convert a table between the gv, gw and abc representations.
    Convert(ConvertArgs),
    /// Run an asymptotic analysis and print a JSON report.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignConvention {
    /// Signs that make the GV transform integral.
    Gv,
    /// Formulas as evaluated.
    Raw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Gv,
    Gw,
    Abc,
}

/// Where invariants come from: a named geometry or a table file.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// conifold, xp (with --p), xp:<p> or hurwitz.
    #[arg(long)]
    pub geometry: Option<String>,
    /// Local-curve parameter p >= 3.
    #[arg(long)]
    pub p: Option<u32>,
    /// GV or GW table file (TSV).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Sign convention for generated local-curve tables.
    #[arg(long, value_enum, default_value_t = SignConvention::Gv)]
    pub sign_convention: SignConvention,
}

/// Genus and degree ranges; a single value sets both ends.
#[derive(Debug, Clone, Args)]
pub struct Ranges {
    #[arg(long)]
    pub g: Option<u32>,
    #[arg(long)]
    pub gmin: Option<u32>,
    #[arg(long)]
    pub gmax: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub dmin: Option<u32>,
    #[arg(long)]
    pub dmax: Option<u32>,
}

impl Ranges {
    fn genera(&self, default_min: u32) -> Result<(u32, u32)> {
        let lo = self.g.or(self.gmin).unwrap_or(default_min);
        let hi = self.g.or(self.gmax).unwrap_or(lo);
        nonempty("genus", lo, hi)
    }

    fn degrees(&self, default_max: Option<u32>) -> Result<(u32, u32)> {
        let lo = self.d.or(self.dmin).unwrap_or(1).max(1);
        let hi = self
            .d
            .or(self.dmax)
            .or(default_max)
            .ok_or_else(|| Error::InvalidArgument("a degree range (--d or --dmax) is required".into()))?;
        nonempty("degree", lo, hi)
    }
}

fn nonempty(what: &str, lo: u32, hi: u32) -> Result<(u32, u32)> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty {what} range {lo}..={hi}")));
    }
    Ok((lo, hi))
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub ranges: Ranges,
    /// Output path (stdout when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Input table.
    #[arg(long)]
    pub input: PathBuf,
    /// Target representation.
    #[arg(long, value_enum)]
    pub to: Kind,
    /// Highest genus when producing GW data (default: enough for the GV bound).
    #[arg(long)]
    pub gmax: Option<u32>,
    /// Highest degree (default: all degrees of the input).
    #[arg(long)]
    pub dmax: Option<u32>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(value_enum)]
    pub analysis: Analysis,
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub ranges: Ranges,
    /// Kähler parameter(s); comma-separated where a scan is allowed.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<String>,
    /// Diagonal offset `g = (t/2) d + q`.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub q: i64,
    /// Exponent `beta` of the diagonal growth `Gamma(2g - beta)`.
    #[arg(long, default_value = "3/2")]
    pub beta: String,
    /// Radius of convergence (decimal); defaults to the geometry's value.
    #[arg(long, allow_hyphen_values = true)]
    pub tc: Option<String>,
    /// Known exponent of d, for fit-log.
    #[arg(long, allow_hyphen_values = true)]
    pub power: Option<String>,
    /// Power-exponent method.
    #[arg(long, value_enum, default_value_t = PowerMethodArg::LogAware)]
    pub method: PowerMethodArg,
    /// Leading GV invariant for the diagonal prediction.
    #[arg(long, allow_hyphen_values = true)]
    pub n01: Option<i64>,
    #[arg(long, default_value_t = 3)]
    pub hmax: u32,
    #[arg(long, default_value_t = 4)]
    pub jmax: u32,
    #[arg(long, default_value_t = 6)]
    pub mmax: u32,
    /// Orders of the Toda check.
    #[arg(long, default_value_t = 6)]
    pub order_q: u32,
    #[arg(long, default_value_t = 6)]
    pub order_g: u32,
    /// Relative height below which saddle peaks are ignored.
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
    /// Allow complex actions (sign-alternating free energies).
    #[arg(long)]
    pub complex: bool,
    /// JSON report path (stdout when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// CSV path for the curves behind the report.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PowerMethodArg {
    LogAware,
    SquareCombination,
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    if cli.precision < 50 {
        return Err(Error::InvalidArgument(format!("precision must be at least 50 digits, got {}", cli.precision)));
    }
    let prec = Precision::digits(cli.precision);
    match &cli.command {
        Command::Gen(args) => gen::run(args),
        Command::Convert(args) => convert::run(args),
        Command::Analyze(args) => analyze::run(args, prec, cli.richardson_order),
    }
}
