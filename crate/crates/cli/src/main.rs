use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use idsing::algebra::Rational;
use idsing::document::{
    exit, parse_mode, parse_samples, parse_seed, run_analyze, run_family, InputDocument, Run, RunError,
    RunFlags, StageTiming,
};
use idsing::family::AnalysisMode;

#[derive(Parser)]
#[command(
    name = "idsing",
    version,
    about = "Invariants of isolated determinantal singularities and their families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certificate, polar multiplicities and vanishing Euler characteristic of a germ.
    Analyze(Common),
    /// Member invariants, topological and Whitney verdicts of a one-parameter family.
    Family(Common),
}

#[derive(Args)]
struct Common {
    /// Input file.
    input: PathBuf,
    /// Print one JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for the random generic choices (decimal or 0x-prefixed hex).
    #[arg(long, value_parser = seed)]
    seed: Option<u64>,
    /// Numerators and denominators of random coefficients are drawn from 1..=B.
    #[arg(long, value_name = "B", value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
    /// Comma-separated parameter values for sampled members, e.g. 1/2,1/3.
    #[arg(long, value_name = "LIST", value_parser = samples)]
    samples: Option<Samples>,
    /// How members with t != 0 are obtained.
    #[arg(long, value_parser = mode)]
    mode: Option<AnalysisMode>,
    /// Number of independent draws that must agree.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    verify_genericity: Option<u64>,
    /// Time limit in seconds for each basis computation.
    #[arg(long, value_name = "SECONDS", value_parser = timeout, allow_negative_numbers = true)]
    timeout: Option<Duration>,
    /// Record wall-clock time per stage in the report.
    #[arg(long)]
    timings: bool,
}

fn seed(s: &str) -> Result<u64, String> {
    parse_seed(s).ok_or_else(|| format!("`{s}` is not a 64-bit integer"))
}

#[derive(Clone)]
struct Samples(Vec<Rational>);

fn samples(s: &str) -> Result<Samples, String> {
    parse_samples(s)
        .map(Samples)
        .ok_or_else(|| format!("`{s}` is not a comma-separated list of rationals"))
}

fn timeout(s: &str) -> Result<Duration, String> {
    s.parse::<f64>()
        .ok()
        .filter(|t| t.is_finite() && *t > 0.0)
        .map(Duration::from_secs_f64)
        .ok_or_else(|| format!("`{s}` is not a positive number of seconds"))
}

fn mode(s: &str) -> Result<AnalysisMode, String> {
    parse_mode(s).ok_or_else(|| format!("`{s}` is neither `generic` nor `sampled`"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // usage errors share the input exit code; --help and --version succeed
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { exit::OK });
        }
    };
    let (family, args) = match cli.command {
        Command::Analyze(a) => (false, a),
        Command::Family(a) => (true, a),
    };
    let flags = RunFlags {
        seed: args.seed,
        bound: args.bound,
        samples: args.samples.map(|s| s.0),
        mode: args.mode,
        draws: args.verify_genericity.map(|k| k as usize),
        timeout: args.timeout,
        timings: args.timings,
    };

    let start = Instant::now();
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(exit::INPUT);
        }
    };
    let doc = match InputDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(exit::INPUT);
        }
    };
    let parse_seconds = start.elapsed().as_secs_f64();

    let result: Result<Run, RunError> = if family {
        run_family(&doc, &flags)
    } else {
        run_analyze(&doc, &flags)
    };
    match result {
        Ok(mut run) => {
            if let Some(t) = run.report.timings.as_mut() {
                t.insert(
                    0,
                    StageTiming {
                        stage: "parse".to_string(),
                        seconds: parse_seconds,
                    },
                );
            }
            if args.json {
                print!("{}", run.report.to_json());
            } else {
                print!("{}", run.report.to_text());
            }
            ExitCode::from(run.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
