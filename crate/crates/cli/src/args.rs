use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellkit",
    version,
    about = "Exact Bell transform of arithmetic functions",
    long_about = "Computes Bell exponents, power-series coefficients, congruence and \
                  vanishing sweeps, and classical polynomial families, all with exact \
                  rational output. Exit codes: 0 success, 1 violations found, 2 usage, \
                  3 I/O or parse failure, 4 coefficient routes disagree."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bell exponents β(1..=limit) of a driver.
    Exponents {
        #[command(flatten)]
        driver: DriverArgs,
        /// Largest index m, at least 1.
        #[arg(long)]
        limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficients a(0..=limit) of the transform.
    Coeffs {
        #[command(flatten)]
        driver: DriverArgs,
        #[arg(long)]
        limit: usize,
        /// recurrence, bellpoly or product.
        #[arg(long, default_value = "recurrence")]
        path: String,
        /// Compute along all three routes and exit 4 if they disagree.
        #[arg(long)]
        check_all_paths: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a coefficient sequence for congruences or exact zeros.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(long, value_enum)]
        preset: Preset,
        #[command(flatten)]
        driver: DriverArgs,
        /// Prime modulus.
        #[arg(long)]
        p: u64,
        /// Largest coefficient index examined (defaults to φ(q) for cyclotomic).
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A polynomial from one of the classical families.
    Poly {
        /// bernoulli, euler, hermite, touchard, laguerre or charlier.
        #[arg(long)]
        family: String,
        /// Degree of a single polynomial.
        #[arg(long, conflicts_with_all = ["table", "upto"])]
        n: Option<usize>,
        /// Laguerre parameter.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Charlier parameter.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Emit every degree 0..=upto.
        #[arg(long, requires = "upto")]
        table: bool,
        #[arg(long, requires = "table")]
        upto: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recover driver values g(1..=N) from coefficients a(0..=N).
    Recover {
        /// JSON file `{"values": ["1", "-1/2", ...]}` holding a(0..=N).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Driver selection shared by the transform commands. Which of the
/// numeric flags are accepted depends on the driver or preset.
#[derive(Debug, Clone, Default, Args)]
pub struct DriverArgs {
    /// epsilon, power_k, chi4, phi, ramanujan_q, log_float, r4, constant_c or custom_file.
    #[arg(long)]
    pub driver: Option<String>,
    /// Exponent for power_k, number of colors for the colored preset.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Modulus for ramanujan_q and the cyclotomic preset.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Value for constant_c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Values file for custom_file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Congruence,
    Vanishing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Tau,
    Colored,
    Cyclotomic,
    Driver,
}

impl Preset {
    pub fn as_str(self) -> &'static str {
        match self {
            Preset::Tau => "tau",
            Preset::Colored => "colored",
            Preset::Cyclotomic => "cyclotomic",
            Preset::Driver => "driver",
        }
    }
}
