use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use smcstrict::cli::{run_source, RunOptions};

/// Normalize expressions, check coherence diagrams, and run verification
/// suites over a program file.
#[derive(Parser)]
#[command(name = "smcstrict", version)]
struct Args {
    /// Program file; `-` reads standard input.
    file: PathBuf,
    /// Print command results as JSON lines.
    #[arg(long)]
    json: bool,
    /// Default expression depth for suites and reports.
    #[arg(long, env = "SMCSTRICT_DEPTH")]
    depth: Option<usize>,
    /// Default seed for randomized suites.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = if args.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        json: args.json,
        depth: args.depth,
        seed: args.seed,
    };
    let out = run_source(&text, &opts);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
