use std::io::Write;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};
use sinpow_cli::commands::{cmd_eval, cmd_table, cmd_verify, EXIT_USAGE};
use sinpow_cli::OutputFormat;

/// Exact values of ∫₀^∞ sinᵖ(t)/tᵠ dt.
#[derive(Parser, Debug)]
#[command(name = "sinpow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single integral.
    Eval {
        p: u32,
        q: u32,
        #[arg(long, value_enum, default_value = "exact")]
        format: OutputFormat,
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Print the grid of values for p ≤ pmax, q ≤ qmax.
    Table {
        #[arg(long, default_value_t = 5)]
        pmax: u32,
        #[arg(long, default_value_t = 5)]
        qmax: u32,
        #[arg(long, value_enum, default_value = "exact")]
        format: OutputFormat,
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
    /// Compare every closed form in the grid with numerical quadrature.
    Verify {
        #[arg(long, default_value_t = 5)]
        pmax: u32,
        #[arg(long, default_value_t = 5)]
        qmax: u32,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let outcome = match cli.command {
        Command::Eval { p, q, format, digits } => cmd_eval(p, q, format, digits),
        Command::Table { pmax, qmax, format, digits } => cmd_table(pmax, qmax, format, digits),
        Command::Verify { pmax, qmax, tol } => cmd_verify(pmax, qmax, tol),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
