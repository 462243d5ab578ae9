use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ctvd_cli::commands::{self, CliError, GenOptions, SolveMode, VerifyOptions};
use ctvd_core::kernel::Faults;

#[derive(Parser)]
#[command(name = "ctvd", version, about = "Cliques-or-trees vertex deletion: kernelize, solve, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an instance to an equivalent kernel.
    Kernelize {
        input: PathBuf,
        /// Kernel file; printed to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the rule-by-rule trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide an instance exactly, or compute an approximate modulator.
    Solve {
        input: PathBuf,
        #[arg(long, conflicts_with = "approx", required_unless_present = "approx")]
        exact: bool,
        #[arg(long)]
        approx: bool,
    },
    /// Compare feasibility before and after kernelization on random instances.
    Verify {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, hide = true)]
        sabotage: Option<Sabotage>,
    },
    /// Emit a planted instance: random cliques and trees plus noise vertices.
    Gen {
        #[arg(long, default_value_t = 3)]
        cliques: usize,
        #[arg(long, default_value_t = 3)]
        trees: usize,
        #[arg(long, default_value_t = 2)]
        noise_vertices: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kernelize planted instances and tabulate kernel sizes against the bound.
    Stats {
        /// Inclusive range such as `1..4`.
        #[arg(long, default_value = "1..4")]
        k_range: String,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV file; printed to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sabotage {
    KeepBudget,
    DropTailAnchor,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut out = io::stdout().lock();
    let mut diag = io::stderr().lock();
    match cli.command {
        Command::Kernelize { input, output, trace } => {
            commands::kernelize(&input, output.as_deref(), trace.as_deref(), &mut out)
        }
        Command::Solve { input, approx, .. } => {
            let mode = if approx { SolveMode::Approx } else { SolveMode::Exact };
            commands::solve(&input, mode, &mut out, &mut diag)
        }
        Command::Verify { count, max_n, max_k, seed, sabotage } => {
            let faults = Faults {
                keep_budget: matches!(sabotage, Some(Sabotage::KeepBudget)),
                drop_tail_anchor: matches!(sabotage, Some(Sabotage::DropTailAnchor)),
            };
            commands::verify(&VerifyOptions { count, max_n, max_k, seed, faults }, &mut out)
        }
        Command::Gen { cliques, trees, noise_vertices, k, seed, output } => {
            let opts = GenOptions { cliques, trees, noise: noise_vertices, k, seed };
            commands::gen(&opts, output.as_deref(), &mut out)
        }
        Command::Stats { k_range, reps, seed, output } => {
            let range = commands::parse_k_range(&k_range)?;
            commands::stats(range, reps, seed, output.as_deref(), &mut out, &mut diag)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
