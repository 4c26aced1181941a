//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Each subcommand has a library-level entry point (`cmd_*`) that returns
//! data; [`run`] only parses, formats and writes.

mod curve;
mod finite;
mod format;
mod landmarks;
mod simulate;
mod validate;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use curve::{cmd_curve, rows_to_csv, rows_to_json, rows_to_svg, BoundName, CurveRow, SweepSpec};
pub use finite::{cmd_finite_bound, FiniteBoundReport, FiniteBoundSpec};
pub use format::format_sig;
pub use landmarks::cmd_landmarks;
pub use simulate::{cmd_simulate, SimConfig};
pub use validate::{cmd_validate, CheckResult, ValidationReport};

use crate::error::Error;

/// Process exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Bsc,
    Awgn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Bits,
    Nats,
}

impl Units {
    /// Multiplier from `native` units to `self`.
    pub fn factor_from(self, native: Units) -> f64 {
        match (native, self) {
            (Units::Bits, Units::Nats) => std::f64::consts::LN_2,
            (Units::Nats, Units::Bits) => 1.0 / std::f64::consts::LN_2,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum AngleUnits {
    #[default]
    Radians,
    Degrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Error,
    Erasure,
}

impl From<Mode> for crate::MarginKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Error => crate::MarginKind::Error,
            Mode::Erasure => crate::MarginKind::Erasure,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "erasure-exponents",
    version,
    about = "Error and erasure exponents of margin decoding"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads; defaults to one per core. Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponent curves over a rate grid.
    Curve(CurveArgs),
    /// Landmark rates and angles with solver residuals.
    Landmarks(LandmarkArgs),
    /// Finite-length union bound for one blocklength.
    FiniteBound(FiniteArgs),
    /// Seeded Monte Carlo simulation from a JSON config.
    Simulate(SimulateArgs),
    /// Run the built-in identity checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum, default_value = "bsc")]
    pub channel: ChannelKind,
    /// BSC crossover probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// AWGN signal-to-noise ratio A (linear).
    #[arg(long)]
    pub snr: Option<f64>,
    /// Margin: a fraction of n (BSC) or an angle (AWGN).
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    /// Units of an AWGN `--tau`.
    #[arg(long, value_enum, default_value = "radians")]
    pub angle_units: AngleUnits,
}

impl ChannelArgs {
    pub(crate) fn tau(&self) -> f64 {
        match (self.channel, self.angle_units) {
            (ChannelKind::Awgn, AngleUnits::Degrees) => self.tau.to_radians(),
            _ => self.tau,
        }
    }

    pub(crate) fn p(&self) -> Result<f64, CliError> {
        self.p
            .ok_or_else(|| CliError::Usage("--p is required for --channel bsc".into()))
    }

    pub(crate) fn snr(&self) -> Result<f64, CliError> {
        self.snr
            .ok_or_else(|| CliError::Usage("--snr is required for --channel awgn".into()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Lowest rate of the grid; defaults to capacity / steps.
    #[arg(long)]
    pub rmin: Option<f64>,
    /// Highest rate of the grid; defaults to capacity.
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Number of grid points.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Units of rates and exponents; defaults to bits (BSC) or nats (AWGN).
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    /// Comma-separated bound names.
    #[arg(long, value_delimiter = ',')]
    pub bounds: Vec<BoundName>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LandmarkArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FiniteArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Blocklength.
    #[arg(long)]
    pub n: usize,
    /// Rate of the binary code in bits.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Binary margin t.
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    /// Bound the undetected error or every decoding failure.
    #[arg(long, value_enum, default_value = "error")]
    pub mode: Mode,
    /// Use a random [n, k] code instead of the GV ensemble.
    #[arg(long)]
    pub k: Option<usize>,
    /// Seed of the random code; defaults to 0.
    #[arg(long)]
    pub code_seed: Option<u64>,
    /// AWGN decoding radius; defaults to π/2.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Units of the exponent; defaults to bits (BSC) or nats (AWGN).
    #[arg(long, value_enum)]
    pub units: Option<Units>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// JSON simulation config.
    #[arg(long)]
    pub config: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the number of trials.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Override the BSC crossover probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Override the AWGN signal-to-noise ratio.
    #[arg(long)]
    pub snr: Option<f64>,
    /// Override the AWGN margin angle.
    #[arg(long)]
    pub tau: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Add a constant to G before validating.
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub perturb_g: f64,
}

/// Why a command did not produce its normal output.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or inputs; exit status 2.
    Usage(String),
    /// A computation failed; carries a structured JSON error. Exit status 1.
    Failure(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_VALIDATION,
        }
    }
}

/// Input-domain errors become usage errors; anything else is a failure.
pub(crate) fn usage(e: Error) -> CliError {
    match e {
        Error::OutOfDomain { .. } | Error::InvalidArgument(_) | Error::GuardExceeded(_) => {
            CliError::Usage(e.to_string())
        }
        other => failure(other),
    }
}

pub(crate) fn failure(e: Error) -> CliError {
    CliError::Failure(error_json(&e))
}

/// Structured form of a library error, including any bracket it scanned.
pub fn error_json(e: &Error) -> Value {
    let detail = match e {
        Error::NoSignChange { lo, hi } => json!({"kind": "no-sign-change", "lo": lo, "hi": hi}),
        Error::MaxIterations { iterations, width } => {
            json!({"kind": "max-iterations", "iterations": iterations, "width": width})
        }
        Error::EmptyInterval { lo, hi } => json!({"kind": "empty-interval", "lo": lo, "hi": hi}),
        Error::OutOfDomain { name, value, domain } => {
            json!({"kind": "out-of-domain", "name": name, "value": value, "domain": domain})
        }
        Error::InvalidArgument(_) => json!({"kind": "invalid-argument"}),
        Error::GuardExceeded(_) => json!({"kind": "guard-exceeded"}),
        Error::RootNotBracketed { equation, lo, hi } => {
            json!({"kind": "root-not-bracketed", "equation": equation, "lo": lo, "hi": hi})
        }
    };
    let mut detail = detail;
    detail["message"] = Value::String(e.to_string());
    json!({ "error": detail })
}

/// Formatted output and the status to exit with.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub body: String,
    pub status: i32,
}

impl CommandOutput {
    fn ok(body: String) -> Self {
        CommandOutput { body, status: EXIT_OK }
    }
}

/// Run a parsed command on the current rayon pool.
pub fn execute(command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Curve(a) => curve::run(a),
        Command::Landmarks(a) => landmarks::run(a),
        Command::FiniteBound(a) => finite::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Validate(a) => validate::run(a),
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Curve(a) => &a.output,
        Command::Landmarks(a) => &a.output,
        Command::FiniteBound(a) => &a.output,
        Command::Simulate(a) => &a.output,
        Command::Validate(a) => &a.output,
    }
}

/// Parse `args`, run the command and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(out) => {
            let target = &output_args(&cli.command).out;
            let written = match target {
                Some(path) => fs::write(path, &out.body).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.status,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Failure(v) => eprintln!("{v}"),
            }
            e.exit_code()
        }
    }
}

/// Pretty JSON with a trailing newline.
pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
