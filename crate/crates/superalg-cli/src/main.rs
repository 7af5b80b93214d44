//! Batch runner for scenario files: builds the declared objects, runs the
//! declared tasks, and prints a deterministic report.
//!
//! Exit codes: 0 all tasks succeeded, 1 at least one task failed,
//! 2 the scenario could not be parsed or validated.

mod report;
mod runner;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use crate::report::ReportInput;
use crate::runner::RunConfig;
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(version, about = "Run a scenario file of algebra constructions and analyses")]
struct Args {
    /// Scenario file (JSON, schema scenario/v1)
    #[arg(long)]
    input: PathBuf,

    /// Random seed; overrides the scenario's own seed field
    #[arg(long)]
    seed: Option<u64>,

    /// Resolution depth for tasks that do not set their own
    #[arg(long, default_value_t = 12)]
    max_depth: usize,

    /// Directory for DOT quiver files (one per quiver task)
    #[arg(long)]
    dot_out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Reject primes p <= 5 instead of warning about them
    #[arg(long)]
    strict_prime: bool,

    /// Include wall-clock timings in the report; timed reports are not
    /// byte-reproducible
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let raw = match std::fs::read(&args.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let text = match std::str::from_utf8(&raw) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {} is not UTF-8: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let sc = match Scenario::parse(text) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if args.strict_prime && sc.prime <= 5 {
        eprintln!(
            "error: scenario prime {} is at most 5 and --strict-prime is set",
            sc.prime
        );
        return ExitCode::from(2);
    }

    let seed = args.seed.unwrap_or(sc.seed);
    let cfg = RunConfig {
        seed,
        max_depth: args.max_depth,
        dot_out: args.dot_out.clone(),
    };
    let start = Instant::now();
    let built = scenario::build_objects(&sc);
    let outcomes = runner::run_tasks(&sc, &built, &cfg);
    let total_millis = start.elapsed().as_millis();

    let report = report::assemble(&ReportInput {
        scenario: &sc,
        raw_bytes: &raw,
        seed,
        built: &built,
        outcomes: &outcomes,
        timings: args.timings,
        total_millis,
    });
    let rendered = match args.format {
        Format::Json => report::render_json(&report),
        Format::Text => report::render_text(&report),
    };
    print!("{rendered}");

    if outcomes.iter().all(|o| o.result.is_ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
