//! `dyckmax`: exact and asymptotic statistics of the maximum height of
//! uniform random Dyck paths.
//!
//! Every subcommand prints one structured record to stdout, as JSON or
//! as CSV rows. Exit codes: 0 success, 1 a verification check failed,
//! 2 usage or domain error.

mod commands;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use output::{Format, Outcome};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dyckmax",
    version,
    about = "Exact and asymptotic statistics of the maximum height of uniform random Dyck paths",
    propagate_version = true
)]
struct Cli {
    /// Output format for the record.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count paths whose maximum height stays strictly below a cap.
    Count(commands::CountArgs),
    /// Exact distribution of the maximum height at a fixed half-length.
    Dist(commands::DistArgs),
    /// Limit law of max/sqrt(2N), evaluated through both series forms.
    Limit(commands::LimitArgs),
    /// Finite-size rate diagnostics for tail deviations.
    Deviation(commands::DeviationArgs),
    /// Draw uniform paths and compare the empirical law to the exact one.
    Sample(commands::SampleArgs),
    /// Run invariant suites; exits 1 if any check fails.
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Count(args) => commands::count(args),
        Command::Dist(args) => commands::dist(args),
        Command::Limit(args) => commands::limit(args),
        Command::Deviation(args) => commands::deviation(args),
        Command::Sample(args) => commands::sample(args),
        Command::Verify(args) => verify::verify(args),
    };
    match outcome {
        Ok(Outcome { record, ok }) => {
            print!("{}", record.render(cli.format));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(error) => {
            eprintln!("dyckmax: {error}");
            ExitCode::from(2)
        }
    }
}
