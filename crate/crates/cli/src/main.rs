//! `supersync`: sweeps and optimizers for superimposed frame synchronization.

mod commands;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;

// aliases keep clap from treating these as repeated arguments; each is parsed from one string
type SizeList = Vec<usize>;
type RealList = Vec<f64>;

#[derive(Parser, Debug)]
#[command(
    name = "supersync",
    version,
    about = "Frame synchronization error bounds and simulations for short packets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sync-error probability versus frame length: Monte-Carlo against the union bound.
    SyncErrorSweep(SyncErrorArgs),
    /// KL divergence between the received-signal law and its Gaussian approximation.
    KlSweep(KlArgs),
    /// Frame-error bound (and optionally simulation) over a grid of sync overheads.
    AlphaSweep(AlphaArgs),
    /// Overhead minimizing the frame-error bound.
    Optimize(OptimizeArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct RunArgs {
    /// Master seed for all random streams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for Monte-Carlo loops (results do not depend on it).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct McSwitch {
    /// Run the Monte-Carlo estimate.
    #[arg(long, overrides_with = "no_mc")]
    #[serde(skip)]
    mc: bool,
    /// Analytic columns only; no random numbers are drawn.
    #[arg(long, overrides_with = "mc")]
    #[serde(skip)]
    no_mc: bool,
}

impl McSwitch {
    pub fn enabled(&self, default: bool) -> bool {
        match (self.mc, self.no_mc) {
            (true, _) => true,
            (_, true) => false,
            _ => default,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct SyncErrorArgs {
    /// Frame lengths: list and/or ranges, e.g. `15,31,63` or `7:8:63`.
    #[arg(long, value_parser = grid::parse_usize_list)]
    pub n: SizeList,
    /// Fraction of the total energy given to the sync word.
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Total SNR in dB; repeat or comma-separate for several.
    #[arg(long, required = true, allow_negative_numbers = true, value_delimiter = ',')]
    pub rho_tot_db: Vec<f64>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Zadoff-Chu root.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub root: i64,
    #[command(flatten)]
    #[serde(skip)]
    pub mc: McSwitch,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct KlArgs {
    /// Block lengths; `a:b` doubles from a up to b.
    #[arg(long, default_value = "2:64", value_parser = grid::parse_usize_list)]
    pub n: SizeList,
    /// SNR in dB; repeat or comma-separate for several.
    #[arg(
        long,
        alias = "rho-tot-db",
        required = true,
        allow_negative_numbers = true,
        value_delimiter = ','
    )]
    pub rho_db: Vec<f64>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct AlphaArgs {
    #[arg(long, default_value_t = 63)]
    pub n: usize,
    /// Information bits per frame.
    #[arg(long, default_value_t = 32)]
    pub k: usize,
    #[arg(long, required = true, allow_negative_numbers = true, value_delimiter = ',')]
    pub rho_tot_db: Vec<f64>,
    /// Overheads to evaluate: list and/or `start:step:stop`.
    #[arg(long, default_value = "0.05:0.05:0.95", value_parser = grid::parse_f64_list)]
    pub alpha_grid: RealList,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub root: i64,
    #[command(flatten)]
    #[serde(skip)]
    pub mc: McSwitch,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct OptimizeArgs {
    #[arg(long, default_value_t = 63)]
    pub n: usize,
    #[arg(long, default_value_t = 32)]
    pub k: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub rho_tot_db: f64,
    /// Points of the coarse overhead scan before refinement.
    #[arg(long, default_value_t = 201)]
    pub grid_points: usize,
    #[command(flatten)]
    pub run: RunArgs,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SyncErrorSweep(_) => "sync-error-sweep",
            Command::KlSweep(_) => "kl-sweep",
            Command::AlphaSweep(_) => "alpha-sweep",
            Command::Optimize(_) => "optimize",
        }
    }
}

fn usage_error(message: &str, subcommand: Option<&str>) -> ExitCode {
    let mut cmd = Cli::command();
    cmd.build();
    let usage = match subcommand.and_then(|name| cmd.find_subcommand_mut(name)) {
        Some(sub) => sub.render_usage(),
        None => cmd.render_usage(),
    };
    eprintln!(
        "{}\n\n{usage}\n\nFor more information, try '--help'.",
        message.trim_end()
    );
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.render().to_string();
            if text.contains("Usage:") {
                eprint!("{text}");
                return ExitCode::from(2);
            }
            // value errors come without usage text
            let message = text
                .split("\n\nFor more information")
                .next()
                .unwrap_or(&text)
                .to_owned();
            let sub = std::env::args().nth(1);
            return usage_error(&message, sub.as_deref());
        }
    };
    let result = match &cli.command {
        Command::SyncErrorSweep(a) => commands::sync_error_sweep(a),
        Command::KlSweep(a) => commands::kl_sweep(a),
        Command::AlphaSweep(a) => commands::alpha_sweep(a),
        Command::Optimize(a) => commands::optimize(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => usage_error(&format!("error: {msg}"), Some(cli.command.name())),
        Err(commands::Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(commands::Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
