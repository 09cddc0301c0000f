//! `torus-asep`: enumeration, exact verification, observables and simulation
//! for the multispecies exclusion process on a ring of rings.
//!
//! Exit status: 0 when every requested check passed, 1 on a failed check or
//! I/O error, 2 on bad input, 3 when the state-count cap is exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use torus_asep::Error;

mod commands;

#[derive(Parser)]
#[command(
    name = "torus-asep",
    version,
    about = "Exact and simulated stationary behaviour of the torus exclusion process"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List configurations (restricted to a leading bullet 1 unless --full).
    Enumerate {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Stationary weight monomial of each configuration.
    Weights {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        rates: Rates,
        #[command(flatten)]
        out: Out,
    },
    /// Exact stationary table over the whole state space.
    Stationary {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        rates: Rates,
        #[command(flatten)]
        out: Out,
    },
    /// Generator in sparse triplet form, with a state manifest.
    Generator {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        rates: Rates,
        /// Where to write the `index,state` manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Balance, weight identities, lumping, irreducibility and the
    /// vertical-horizontal current identity.
    Verify {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        rates: Rates,
        #[command(flatten)]
        out: Out,
    },
    /// Densities and currents: closed forms against stationary expectations.
    Observables {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        rates: Rates,
        #[command(flatten)]
        out: Out,
    },
    /// Partition function in the identical, symmetric and totally asymmetric cases.
    Special {
        #[command(flatten)]
        size: Size,
        /// identical, symmetric or totally_asymmetric; all three when absent.
        #[arg(long)]
        case: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Continuous-time Monte Carlo with crossing ledger and batch-means estimates.
    Simulate {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        rates: Rates,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, conflicts_with = "time")]
        events: Option<u64>,
        #[arg(long)]
        time: Option<f64>,
        #[arg(long, default_value_t = torus_asep::mcmc::DEFAULT_BATCHES)]
        batches: usize,
        /// Exit 1 unless every current lies within this many standard errors
        /// of its closed form.
        #[arg(long)]
        check_se: Option<f64>,
        /// Record wall time in the manifest (breaks byte-identical reruns).
        #[arg(long)]
        wall_time: bool,
        /// Output directory for manifest.json, ledger.csv and estimates.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Totally asymmetric restriction: states with q_i = 0 for i in I.
    Ta {
        #[command(flatten)]
        size: Size,
        /// One-based labels, comma separated, e.g. "1,3".
        #[arg(long = "I", value_name = "LABELS")]
        labels: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Clone, Copy)]
struct Size {
    #[arg(long = "L", value_name = "L")]
    l: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Clone)]
struct Rates {
    /// Inline "p1,..,pn;q1,..,qn" or a path to a JSON rates file.
    #[arg(long)]
    rates: Option<String>,
    #[arg(long, conflicts_with = "rates")]
    rates_file: Option<PathBuf>,
    /// Symbolic unless rates are given.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Args, Clone)]
struct Out {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// File to write; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Symbolic,
    Numeric,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceCap { .. } => 3,
        Error::Parse(_) | Error::Domain(_) | Error::Validation(_) | Error::Reducible { .. } => 2,
        Error::IdentityFailure(_) | Error::SolverExhausted { .. } | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
