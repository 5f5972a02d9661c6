//! `starshape`: batch verifier for star-shaped graphs.
//!
//! Exit codes: 0 pass or reported, 1 verification failure, 2 usage error.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use starshape::algebra::parse_decimal;
use starshape::{Parity, Rational, RootChoice, StarGraph};

use commands::{CliError, Check};
use report::Status;

#[derive(Parser)]
#[command(name = "starshape", version, about = "Classify star-shaped graphs and verify identities of their special characters")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Decimal tolerance and root enclosure width.
    #[arg(long, global = true, default_value = "1e-10", value_parser = parse_precision)]
    precision: Rational,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Dynkin, extended Dynkin or hyperbolic, with enclosed roots.
    Classify {
        #[arg(long, value_parser = parse_graph)]
        branches: StarGraph,
    },
    /// Run one identity check on the special character.
    Verify {
        #[arg(long, value_parser = parse_graph)]
        branches: StarGraph,
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long, default_value_t = 10)]
        max_j: usize,
    },
    /// Irreducibility and rational independence certificate.
    Certify {
        #[arg(long, value_parser = parse_graph, required_unless_present = "all_minimal", conflicts_with = "all_minimal")]
        branches: Option<StarGraph>,
        /// Certify the five minimal hyperbolic graphs.
        #[arg(long)]
        all_minimal: bool,
    },
    /// Compare t + 1/t + 2 with the squared spectral radius over a sweep.
    Hypothesis {
        #[arg(long)]
        max_branches: usize,
        #[arg(long)]
        max_k: usize,
    },
    /// Alternating Coxeter iterates of one part of the special character.
    Orbit {
        #[arg(long, value_parser = parse_graph)]
        branches: StarGraph,
        #[arg(long, value_enum)]
        start: StartArg,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = RootArg::T2)]
        t_choice: RootArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    TsEigen,
    Gamma,
    Eq5,
    Prop5,
    Rho,
    Limits,
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootArg {
    T1,
    T2,
}

fn parse_graph(s: &str) -> Result<StarGraph, String> {
    s.parse().map_err(|e: starshape::Error| e.to_string())
}

fn parse_precision(s: &str) -> Result<Rational, String> {
    let p = parse_decimal(s).map_err(|e| e.to_string())?;
    if p <= Rational::from_integer(0.into()) {
        return Err("precision must be positive".into());
    }
    Ok(p)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = &cli.precision;
    let report = match &cli.command {
        Command::Classify { branches } => commands::classify_cmd(branches, precision),
        Command::Verify { branches, which, max_j } => {
            let check = match which {
                WhichArg::TsEigen => Check::TsEigen,
                WhichArg::Gamma => Check::Gamma,
                WhichArg::Eq5 => Check::Eq5,
                WhichArg::Prop5 => Check::Prop5,
                WhichArg::Rho => Check::Rho,
                WhichArg::Limits => Check::Limits,
                WhichArg::Sigma => Check::Sigma,
            };
            commands::verify_cmd(branches, check, *max_j, precision)
        }
        Command::Certify { branches, .. } => commands::certify_cmd(branches.as_ref()),
        Command::Hypothesis { max_branches, max_k } => commands::hypothesis_cmd(*max_branches, *max_k, precision),
        Command::Orbit {
            branches,
            start,
            steps,
            t_choice,
        } => {
            let start = match start {
                StartArg::Odd => Parity::Odd,
                StartArg::Even => Parity::Even,
            };
            let root = match t_choice {
                RootArg::T1 => RootChoice::T1,
                RootArg::T2 => RootChoice::T2,
            };
            commands::orbit_cmd(branches, start, *steps, root, precision)
        }
    };
    match report {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("serializable") + "\n",
                Format::Table => report.to_table(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            match report.status {
                Status::Fail => ExitCode::from(1),
                Status::Pass | Status::Reported => ExitCode::SUCCESS,
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
