//! `cuspmass`: tables of eigenform data, mass-distribution integrals and identity checks.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

/// Exit status when a computed check fails.
const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for usage, configuration and precondition errors.
const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "cuspmass", version, about, args_override_self = true)]
pub struct Cli {
    /// key=value file whose keys mirror the long flags of the chosen subcommand
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// worker threads (default: all cores)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// directory for eigen_k{k}.tsv caches
    #[arg(long, global = true, env = "CUSPMASS_CACHE_DIR", value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// write the table here instead of standard output
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build (and cache) Hecke eigenbases and summarise each form
    Eigen(EigenArgs),
    /// L^p norms over the fundamental domain
    Norms(NormsArgs),
    /// The geodesic integral by three routes, and R(y₀) by quadrature and by sums
    Geodesic(GeodesicArgs),
    /// The cusp integral P(y₀) by quadrature and by sums
    Cusp(CuspArgs),
    /// Shifted convolution sums T(l), S(l) and partial sums of S(l)/l, S(l)²/l
    Shifted(ShiftedArgs),
    /// Central L-values, L(1, sym² f) and the mean value 𝓜_f(r)
    Lvalues(LvaluesArgs),
    /// Run the verification suite and print one JSON object per check
    Check(CheckArgs),
    /// Stationary phase against quadrature on the Gaussian benchmark
    Statphase(StatphaseArgs),
    /// Normalised fourth moments across weights
    FourthMoment(FourthMomentArgs),
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// eigenvalue table length
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [2.0, 4.0])]
    pub p: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [1.0])]
    pub y0: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct CuspArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [0.9, 2.0, 10.0])]
    pub y0: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ShiftedArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// largest l in the T/S table
    #[arg(long, default_value_t = 100)]
    pub l_max: u64,
    /// cut points N of the partial sums
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [10u64, 100, 1000])]
    pub n: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct LvaluesArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    /// truncation constant of the degree-6 sums
    #[arg(long, default_value_t = cuspmass::lvalues::DEFAULT_C_W)]
    pub c_w: f64,
    /// r values of the mean value 𝓜_f(r)
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [1usize])]
    pub r: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// identity families to run (default: all)
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub identity: Vec<String>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [12u32])]
    pub k: Vec<u32>,
    /// NAME=VALUE overrides of the tolerance table
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub tolerance: Vec<String>,
    #[arg(long, default_value_t = cuspmass::lvalues::DEFAULT_C_W)]
    pub c_w: f64,
}

#[derive(Debug, Args)]
pub struct StatphaseArgs {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [1e2, 1e3, 1e4])]
    pub lambda: Vec<f64>,
    /// largest number of expansion terms
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    /// absolute tolerance of the quadrature oracle
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FourthMomentArgs {
    #[arg(long, default_value_t = 12)]
    pub k_min: u32,
    #[arg(long, default_value_t = 40)]
    pub k_max: u32,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match config::parse(&argv) {
        Ok(cli) => cli,
        Err(config::ParseError::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
        Err(config::ParseError::Config(msg)) => {
            eprintln!("cuspmass: {msg}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("cuspmass: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let ctx = commands::Context { cache_dir: cli.cache_dir.clone() };
    let outcome = match commands::run(&cli.command, &ctx) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("cuspmass: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cuspmass: cannot write output: {e}");
        return ExitCode::from(EXIT_CHECK_FAILED);
    }
    if outcome.failed > 0 {
        eprintln!("cuspmass: {} check(s) failed", outcome.failed);
        return ExitCode::from(EXIT_CHECK_FAILED);
    }
    ExitCode::SUCCESS
}

fn error_code(e: &cuspmass::Error) -> u8 {
    use cuspmass::Error::*;
    match e {
        InvalidWeight(_) | Precondition(_) | Domain(_) | InsufficientPrecision { .. } => EXIT_CONFIG,
        _ => EXIT_CHECK_FAILED,
    }
}
