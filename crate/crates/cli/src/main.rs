//! `monogamy` command-line front end.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage or input error.

mod classify;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monogamy::format::state_from_json;
use monogamy::verify::{run_suite, Suite, TrialConfig};
use monogamy::TripartitePureState;

#[derive(Parser)]
#[command(name = "monogamy", version, about = "Entanglement measures and monogamy residuals for 2x2xn pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the seven measures and the local ranks of a state file.
    Measure {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate a GHZ or W family over a parameter grid as CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: sweep::Family,
        /// Grid axis, NAME=START:STOP:STEPS (repeatable; first is outermost).
        #[arg(long = "param", required = true)]
        params: Vec<String>,
        /// Fixed parameter, NAME=VALUE (repeatable).
        #[arg(long = "fix")]
        fixes: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run verification suites and stream one JSON line per suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Suite to run (repeatable); all suites when omitted.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Print local ranks and the entanglement class of a state file.
    Classify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// An error worth reporting, mapped to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_state(path: &PathBuf) -> Result<TripartitePureState, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    state_from_json(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Measure { file, format } => {
            let s = read_state(&file)?;
            let m = output::Measured::of(&s)?;
            match format {
                Format::Json => println!("{}", m.to_json()),
                Format::Csv => print!("{}", m.to_csv()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { family, params, fixes, out } => {
            let spec = sweep::SweepSpec::parse(family, &params, &fixes)?;
            let table = sweep::run(&spec)?;
            std::fs::write(&out, table).map_err(|e| UsageError(format!("{}: {e}", out.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed, trials, tol, suites } => {
            let mut selected = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<Vec<_>, _>>()?
            };
            selected.sort();
            selected.dedup();
            let cfg = TrialConfig { seed, trials, tol, ..TrialConfig::default() };
            cfg.validate()?;
            let mut ok = true;
            for suite in selected {
                for r in run_suite(&cfg, &[suite.name()])? {
                    println!("{}", r.to_json_line());
                    ok &= r.passed();
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Classify { file } => {
            let s = read_state(&file)?;
            print!("{}", classify::classify(&s)?.render());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
