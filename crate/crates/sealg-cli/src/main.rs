//! The `sealg` command-line tool.
//!
//! Exit codes: 0 for certified results and completed checks, 2 for stable but uncertified
//! results, 3 for inconclusive results and 1 for errors.

mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use serde_json::json;

use args::Cli;
use input::Settings;
use report::{exit, Outcome};
use sealg::Exec;

fn execute(cli: &Cli) -> Result<Outcome> {
    let settings = Settings {
        exec: if cli.global.sequential { Exec::Sequential } else { Exec::default() },
        timing: cli.global.timing,
        verbose: cli.global.verbose,
    };
    let start = Instant::now();
    let mut outcome = commands::dispatch(&cli.global, &cli.command, &settings)?;
    if settings.timing {
        let seconds = start.elapsed().as_secs_f64();
        outcome.report.timing = Some(json!({ "seconds": seconds }));
        outcome.summary.push(format!("  time {seconds:.2}s"));
    }
    let text = serde_json::to_string_pretty(&outcome.report)?;
    if let Some(path) = &cli.global.output {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            if cli.global.json {
                let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
                println!("{text}");
            } else {
                for line in &outcome.summary {
                    println!("{line}");
                }
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::ERROR)
        }
    }
}
