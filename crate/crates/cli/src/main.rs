//! Command-line interface: solve systems from JSON files, generate inputs,
//! and run the benchmark scenarios.
//!
//! Exit codes: 0 success, 2 rank-condition failure, 3 parse or usage error,
//! 1 anything else.

mod bench;
mod commands;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "eigensolver",
    version,
    about = "Polynomial system solver via eigenvalue reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a polynomial system from a JSON file.
    Solve(commands::SolveArgs),
    /// Generate a system JSON file (random family or builtin).
    Gen(commands::GenArgs),
    /// Run a benchmark scenario and emit CSV.
    Bench(bench::BenchArgs),
}

fn main() {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems (including a missing --family) are exit 3.
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Solve(args) => commands::run_solve(args),
        Command::Gen(args) => commands::run_gen(args),
        Command::Bench(args) => bench::run_bench(args),
    };
    match code {
        Ok(c) => std::process::exit(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
