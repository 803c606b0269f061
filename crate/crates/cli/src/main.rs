use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paramodular_cli::{run, Command, Example, JobOptions, JobSpec, OutputFormat};

#[derive(Parser)]
#[command(name = "paramodular", version, about = "Paramodular invariants of lifted Hilbert modular forms")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    output: Format,
    /// Extra good primes to include in transfer reports.
    #[arg(long, value_delimiter = ',', global = true)]
    primes: Vec<u64>,
    /// Relative tolerance of the archimedean ratio check.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,
    /// Seed for the randomized similitude trials of `verify-tables`.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    ConsaniScholten,
    Branches,
}

#[derive(Subcommand)]
enum Cmd {
    /// Splitting data of p in Q(sqrt D).
    Field {
        /// Squarefree discriminant parameter D > 1
        d: i64,
        /// Rational prime
        p: u64,
    },
    /// L-packet of a local parameter.
    Classify {
        /// Local input JSON file
        input: PathBuf,
    },
    /// Paramodular invariants and Euler factor of a local parameter.
    Invariants {
        /// Local input JSON file
        input: PathBuf,
    },
    /// Siegel form report for a Hilbert modular form.
    Transfer {
        /// Transfer input JSON file
        input: PathBuf,
    },
    /// Checks every row identity and the closed-form eigenvalue statements.
    VerifyTables,
    /// Runs a shipped transfer input.
    Example { name: ExampleName },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = match cli.command {
        Cmd::Field { d, p } => Command::Field { d, p },
        Cmd::Classify { input } => Command::Classify { input },
        Cmd::Invariants { input } => Command::Invariants { input },
        Cmd::Transfer { input } => Command::Transfer { input },
        Cmd::VerifyTables => Command::VerifyTables,
        Cmd::Example { name } => Command::Example(match name {
            ExampleName::ConsaniScholten => Example::ConsaniScholten,
            ExampleName::Branches => Example::Branches,
        }),
    };
    let spec = JobSpec {
        command,
        output: match cli.output {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        options: JobOptions {
            primes: cli.primes,
            tolerance: cli.tolerance,
            seed: cli.seed,
        },
    };
    let out = run(&spec);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
