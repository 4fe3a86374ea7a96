//! `oqgt`: scans, inspection, and validation of operator geometric
//! tensors on the rotated XY chain. See `oqgt --help` for the commands.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use oqgt_cli::{
    config, echo, error::CliError, mode, phase, scan, suites, ScanOverrides,
};

#[derive(Parser)]
#[command(
    name = "oqgt",
    version,
    about = "Operator geometric tensor toolkit for the rotated XY chain",
    long_about = "Grid scans of the chain's metric and curvature to CSV, a per-mode \
                  inspector, validation batteries, and echo / geometric-phase utilities. \
                  Scan output is byte-identical for identical configuration, whatever \
                  the worker count."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the (lambda, t) grid and write one CSV row per point
    Scan(ScanArgs),
    /// Print one momentum mode's dispersion, angle, and 3x3 tensor
    Mode(ModeArgs),
    /// Run validation batteries; nonzero exit if a hard gate fails
    Validate(ValidateArgs),
    /// Overlap decay: metric prediction plus exact value on small chains
    Echo(EchoCmdArgs),
    /// Geometric phase of a preset loop: line, surface, Stokes residual
    Phase(PhaseArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// TOML file with ScanConfig fields; flags override it
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    /// Chain length (odd)
    #[arg(long)]
    spins: Option<usize>,
    #[arg(long)]
    lambda_min: Option<f64>,
    #[arg(long)]
    lambda_max: Option<f64>,
    #[arg(long)]
    lambda_steps: Option<usize>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_steps: Option<usize>,
    /// Divide tensor columns by the spin count
    #[arg(long, overrides_with = "no_rescale")]
    rescale: bool,
    /// Keep extensive (unscaled) tensor columns
    #[arg(long)]
    no_rescale: bool,
    /// Output CSV path
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (never affects output bytes)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ModeArgs {
    /// Mode index, 0..=(spins-1)/2
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 5)]
    spins: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// Battery selection
    #[arg(value_enum)]
    suite: suites::Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct EchoCmdArgs {
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 7)]
    spins: usize,
    #[arg(long, default_value_t = 0.0)]
    delta_lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    delta_gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta_phi: f64,
}

#[derive(Args)]
struct PhaseArgs {
    /// TOML file selecting a preset and loop resolution
    #[arg(value_name = "CONFIG")]
    config: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests arrive here too and are not errors
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => oqgt_cli::EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Command::Scan(args) => {
            let file = match &args.config {
                Some(path) => Some(config::ConfigFile::load(path)?),
                None => None,
            };
            let overrides = ScanOverrides {
                gamma: args.gamma,
                phi: args.phi,
                n_spins: args.spins,
                lambda_min: args.lambda_min,
                lambda_max: args.lambda_max,
                lambda_steps: args.lambda_steps,
                t_min: args.t_min,
                t_max: args.t_max,
                t_steps: args.t_steps,
                rescale_by_n: match (args.rescale, args.no_rescale) {
                    (true, _) => Some(true),
                    (_, true) => Some(false),
                    _ => None,
                },
                output_path: args.out,
                threads: args.threads,
            };
            let cfg = config::effective_config(file.as_ref(), &overrides)?;
            scan::run_scan(&cfg)
        }
        Command::Mode(a) => {
            print!(
                "{}",
                mode::mode_report(a.k, a.lambda, a.gamma, a.phi, a.t, a.spins)?
            );
            Ok(())
        }
        Command::Validate(a) => {
            let reports = suites::run_suite(a.suite, a.seed)?;
            for r in &reports {
                println!("{r}");
            }
            let failures = suites::gate_failures(&reports);
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::numerical(format!(
                    "hard gates failed: {}",
                    failures.join(", ")
                )))
            }
        }
        Command::Echo(a) => {
            let args = echo::EchoArgs {
                lambda: a.lambda,
                gamma: a.gamma,
                phi: a.phi,
                t: a.t,
                n_spins: a.spins,
                delta_lambda: a.delta_lambda,
                delta_gamma: a.delta_gamma,
                delta_phi: a.delta_phi,
            };
            print!("{}", echo::echo_report(&args)?);
            Ok(())
        }
        Command::Phase(a) => {
            let cfg = phase::PhaseConfig::load(&a.config)?;
            print!("{}", phase::phase_report(&cfg)?);
            Ok(())
        }
    }
}
