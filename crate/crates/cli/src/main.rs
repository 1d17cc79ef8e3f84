use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Periodic nilsequences, Gowers norms and the windowed inverse-theorem pipeline.
#[derive(Debug, Parser)]
#[command(name = "nilift", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// U^{s+1} norm of a function on Z/N
    Gowers(FunctionArgs),
    /// Evaluate the periodic quadratic nilsequence on the Heisenberg nilmanifold
    Heisenberg(HeisenbergArgs),
    /// Lift a rational polynomial phase to an N-periodic polynomial map
    Lift(LiftArgs),
    /// Run the windowed deduction with an inverse oracle
    Deduce(DeduceArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// Modulus N (required with --gen; checked against the length of --input)
    #[arg(long)]
    n: Option<usize>,
    /// Degree s; the norm computed is U^{s+1}
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Built-in generator, e.g. character:3, quadratic:1, random:42, delta, poly:0,0,1/5
    #[arg(long, conflicts_with = "input")]
    gen: Option<String>,
    /// JSON file holding an array of [re, im] pairs
    #[arg(long)]
    input: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct HeisenbergArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    /// Half-open range of t, e.g. 0..15 (default 0..N)
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Write the (t, re, im) table as CSV
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct LiftArgs {
    #[arg(long)]
    n: u64,
    /// Degree bound of the lifted group
    #[arg(long)]
    s: usize,
    /// Exact coefficients c0,c1,... of p(x) = sum c_j x^j, e.g. 0,0,1/25
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Half-open range of x, e.g. -10..10 (default 0..N)
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Write the (x, re, im) table as CSV
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct DeduceArgs {
    #[command(flatten)]
    function: FunctionArgs,
    /// Inverse oracle: fourier, quadratic-grid or external
    #[arg(long, default_value = "fourier")]
    oracle: String,
    /// Phase polynomial for the external oracle
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Write the final nilsequence (x, re, im) on 0..N as CSV
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace every float tolerance
    #[arg(long)]
    tolerance: Option<f64>,
    /// Run a single group of checks
    #[arg(long)]
    only: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
