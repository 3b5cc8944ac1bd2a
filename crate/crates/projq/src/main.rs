//! Thin command-line front end: run a JSON scenario file and print one
//! report per task. See the `scenario` module docs for the file format.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use projq::scenario::{self, ReportFormat, RunConfig, Scenario};
use projq::DEFAULT_TOL;

#[derive(Parser)]
#[command(
    name = "projq",
    version,
    about = "Quantum probability on projective space: run scenario files"
)]
struct Args {
    /// Path to the JSON scenario file.
    scenario: PathBuf,

    /// Global tolerance override (default 1e-10).
    #[arg(long)]
    tol: Option<f64>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Default seed for sample tasks that do not set their own.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.scenario) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", args.scenario.display());
            return ExitCode::from(1);
        }
    };
    let scenario = match Scenario::from_json(&text) {
        Ok(scenario) => scenario,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code());
        }
    };
    let cfg = RunConfig {
        tol: args.tol.unwrap_or(DEFAULT_TOL),
        format: match args.format {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Text => ReportFormat::Text,
        },
        seed: args.seed,
    };
    match scenario::run(&scenario, &cfg) {
        Ok(reports) => {
            print!("{}", scenario::render(&reports, cfg.format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
