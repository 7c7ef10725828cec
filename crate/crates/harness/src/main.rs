use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use singlab::parse::parse_poly;
use singlab::report::ReportSet;
use singlab::scenario::{branches, run_scenario, DEFAULT_PRECISION};
use singlab::{identities, suite};
use singlab_core::catalog::Family;
use singlab_core::detect::classify;

/// Exact checks for a catalog of threefold singularities.
#[derive(Parser)]
#[command(name = "singlab", version)]
struct Cli {
    /// Also write the machine-readable report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the built-in identities and chart chains.
    Verify {
        #[arg(value_parser = ["all"], default_value = "all")]
        what: String,
    },
    /// Replay a JSON scenario file.
    Scenario { path: PathBuf },
    /// Classify a singularity at the origin.
    Classify {
        #[arg(long)]
        poly: String,
    },
    /// Count local branches of a quadratic or cubic in z over w.
    Branches {
        #[arg(long)]
        poly: String,
        /// Only test for a full split after w = v^k.
        #[arg(long)]
        ramify: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Branch-count and detection sweep over a normal-form family.
    Suite {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
}

const USAGE: u8 = 2;

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| {
            eprintln!("cannot write {}: {e}", p.display());
            ExitCode::from(USAGE)
        })?;
    }
    Ok(())
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let usage = |e: &dyn std::fmt::Display| {
        eprintln!("error: {e}");
        ExitCode::from(USAGE)
    };
    match cli.cmd {
        Cmd::Verify { .. } => {
            let set = ReportSet::new(identities::verify_all());
            print!("{}", set.render());
            write_json(&cli.json, &set.to_json())?;
            Ok(verdict(set.ok))
        }
        Cmd::Scenario { path } => {
            let start = Instant::now();
            let mut report = run_scenario(&path).map_err(|e| usage(&e))?;
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
            print!("{}", report.render());
            write_json(&cli.json, &report.to_json())?;
            Ok(verdict(report.ok()))
        }
        Cmd::Classify { poly } => {
            let f = parse_poly(&poly).map_err(|e| usage(&e))?;
            let d = classify(&f);
            println!("{}", d.label);
            write_json(&cli.json, &serde_json::to_string_pretty(&d).unwrap_or_default())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Branches { poly, ramify, precision } => {
            let f = parse_poly(&poly).map_err(|e| usage(&e))?;
            let (text, value) = branches(&f, "z", "w", ramify, precision);
            println!("{text}");
            write_json(&cli.json, &serde_json::to_string_pretty(&value).unwrap_or_default())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Suite { family, count, seed, precision } => {
            let fam = Family::from_name(&family).ok_or_else(|| usage(&format!("unknown family {family}")))?;
            let tally = suite::run(fam, seed, count, precision);
            print!("{}", tally.render());
            write_json(&cli.json, &serde_json::to_string_pretty(&tally).unwrap_or_default())?;
            Ok(verdict(tally.ok()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE) } else { ExitCode::SUCCESS };
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
