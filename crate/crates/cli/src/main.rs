mod chow;
mod csm;
mod fan;
mod input;
mod invariants;
mod map;
mod matroid;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser)]
#[command(name = "bergmankit", version, about = "Matroids, Bergman fans and their automorphisms")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Build, inspect and transform matroids.
    #[command(subcommand)]
    Matroid(matroid::Cmd),
    /// Fan structures on the Bergman fan.
    #[command(subcommand)]
    Fan(fan::Cmd),
    /// Characteristic polynomial and related invariants.
    #[command(subcommand)]
    Invariants(invariants::Cmd),
    /// Degrees in the Chow ring.
    #[command(subcommand)]
    Chow(chow::Cmd),
    /// CSM classes as Minkowski weights.
    #[command(subcommand)]
    Csm(csm::Cmd),
    /// Linear maps between Bergman fans.
    #[command(subcommand)]
    Map(map::Cmd),
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::Matroid(c) => matroid::run(c),
        Command::Fan(c) => fan::run(c),
        Command::Invariants(c) => invariants::run(c),
        Command::Chow(c) => chow::run(c),
        Command::Csm(c) => csm::run(c),
        Command::Map(c) => map::run(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Human => report.human,
                Format::Structured => {
                    serde_json::to_string_pretty(&report.data).expect("reports serialize")
                }
            };
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
