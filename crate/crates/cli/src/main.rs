//! `gibbs-spectra`: spectral bounds, simulation and verification for
//! two-component Gibbs samplers.
//!
//! Exit codes: 0 success, 1 configuration error, 2 unsupported model or
//! chain, 3 verification failure.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gibbs_chains::{ChainKind, State};
use gibbs_models::Model;

mod commands;
mod error;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "gibbs-spectra", version, about = "Spectral bounds for two-component Gibbs samplers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Model as inline JSON or a path to a JSON file, e.g.
    /// {"model":"beta-binomial","params":{"n":100,"alpha":1,"beta":1}}
    #[arg(long, global = true)]
    pub model: Option<String>,
    /// x-chain (default), theta-chain, bivariate-k, bivariate-k-tilde or
    /// random-scan. `verify --model` without it checks every finite chain.
    #[arg(long, global = true)]
    pub chain: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chi-square and total variation bounds over a range of steps.
    Bounds {
        /// Start state: `x`, or `x;theta` for the joint chains.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Inclusive range `A..B`, or a single step count.
        #[arg(long)]
        steps: String,
    },
    /// Independent replicates; the primary output is the histogram of final states.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 3000)]
        reps: usize,
        /// Bins for continuous state spaces.
        #[arg(long, default_value_t = 50)]
        bins: usize,
        /// Also write every path to `<out>.traces.csv` (needs --out).
        #[arg(long)]
        traces: bool,
    },
    /// Brute-force checks of the catalog: the shipped suite, or the chains of --model.
    Verify {
        /// Shift the first chain's β₁ by 1e-3 to exercise the failure path.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Eigenvalues, norms and polynomial family of a chain.
    Catalog {
        #[arg(long, default_value = "0..4")]
        degrees: String,
        /// List the random-scan eigenvalue pairs instead.
        #[arg(long)]
        random_scan: bool,
    },
    /// Cutoff thresholds with every stated bound evaluated.
    Cutoff {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
    },
}

impl Global {
    pub fn model(&self) -> Result<Model, CliError> {
        let Some(arg) = &self.model else {
            return Err(CliError::Config("--model is required".into()));
        };
        let text = if arg.trim_start().starts_with('{') {
            arg.clone()
        } else {
            std::fs::read_to_string(arg).map_err(|e| CliError::Config(format!("reading model file {arg}: {e}")))?
        };
        Ok(Model::from_json(&text)?)
    }

    pub fn chain(&self) -> Result<ChainKind, CliError> {
        let Some(name) = &self.chain else { return Ok(ChainKind::XChain) };
        ChainKind::parse(name).ok_or_else(|| {
            let names: Vec<&str> = ChainKind::ALL.iter().map(|k| k.name()).collect();
            CliError::Config(format!("unknown chain {name:?}; expected one of {}", names.join(", ")))
        })
    }

    pub fn workers(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }
}

pub fn parse_state(text: &str, kind: ChainKind) -> Result<State, CliError> {
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| CliError::Config(format!("start {text:?}: {s:?} is not a number")))
    };
    let parts: Vec<&str> = text.split([';', ',']).collect();
    match (parts.as_slice(), kind.is_joint()) {
        ([v], false) => Ok(State::Single(num(v)?)),
        ([x, t], true) => Ok(State::Pair { x: num(x)?, theta: num(t)? }),
        (_, true) => Err(CliError::Config(format!("{} starts are pairs `x;theta`, got {text:?}", kind.name()))),
        (_, false) => Err(CliError::Config(format!("{} starts are single values, got {text:?}", kind.name()))),
    }
}

/// `A..B` (inclusive, empty when A > B) or a single `A`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, CliError> {
    let num = |s: &str| {
        s.trim().parse::<u64>().map_err(|_| CliError::Config(format!("range {text:?}: {s:?} is not a step count")))
    };
    match text.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.trim_start_matches('='))?),
        None => {
            let a = num(text)?;
            Ok(a..=a)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Bounds { start, steps } => commands::bounds(g, &start, &steps),
        Command::Simulate { start, steps, reps, bins, traces } => commands::simulate(g, &start, steps, reps, bins, traces),
        Command::Verify { inject_fault } => commands::verify(g, inject_fault),
        Command::Catalog { degrees, random_scan } => commands::catalog(g, &degrees, random_scan),
        Command::Cutoff { start, c } => commands::cutoff(g, &start, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
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
