use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gnk_cli::error::CliResult;
use gnk_cli::{diagnose, eval, solve, CliError};

/// Solve the general conjugation problem on unbounded circle domains.
///
/// Thread count follows RAYON_NUM_THREADS.
#[derive(Debug, Parser)]
#[command(name = "gnk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem file and write the solution document.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Record wall-clock solve time in the output.
        #[arg(long)]
        timing: bool,
    },
    /// Evaluate Psi at points of the domain from a solution document.
    Eval {
        #[arg(short, long)]
        input: PathBuf,
        /// CSV file of `re,im` rows.
        #[arg(short, long)]
        points: Option<PathBuf>,
        /// Inline point `re,im`; may be repeated.
        #[arg(long = "at", value_name = "RE,IM", allow_hyphen_values = true)]
        at: Vec<String>,
        /// Output path; `.json` selects JSON, anything else CSV (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Still write values for the accepted points when some are rejected.
        #[arg(long)]
        partial: bool,
    },
    /// Report null-space dimensions, conditioning and a convergence table.
    Diagnose {
        #[arg(short, long)]
        input: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve {
            input,
            output,
            timing,
        } => {
            solve::run(&input, output.as_deref(), &solve::SolveOptions { timing })?;
        }
        Command::Eval {
            input,
            points,
            at,
            output,
            partial,
        } => {
            let mut all = match &points {
                Some(p) => eval::read_points(p)?,
                None => Vec::new(),
            };
            for text in &at {
                all.push(eval::parse_inline(text)?);
            }
            eval::run(
                &input,
                &all,
                output.as_deref(),
                &eval::EvalOptions { partial },
            )?;
        }
        Command::Diagnose { input } => {
            diagnose::run(&input, &mut std::io::stdout().lock())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
