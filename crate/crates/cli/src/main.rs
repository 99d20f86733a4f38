mod args;
mod commands;
mod exit;
mod manifest;
mod verify;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde_json::json;

use crate::args::{Cli, Command};
use crate::exit::{code_for, UsageError};
use crate::manifest::{argv_from_config, now_unix, replayable_argv, RunManifest};

fn resolve(cli: Cli) -> Result<(Command, Option<std::path::PathBuf>, Vec<String>)> {
    let raw: Vec<String> = std::env::args().skip(1).collect();
    match (&cli.config, cli.command) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let argv = argv_from_config(&v)
                .ok_or_else(|| UsageError(format!("{} has no argv list", path.display())))?;
            let replay = Cli::try_parse_from(std::iter::once("rpm".to_string()).chain(argv.iter().cloned()))
                .map_err(|e| UsageError(e.to_string()))?;
            let cmd = replay
                .command
                .ok_or_else(|| UsageError("config names no subcommand".into()))?;
            Ok((cmd, cli.out.or(replay.out), argv))
        }
        (None, Some(cmd)) => Ok((cmd, cli.out, replayable_argv(&raw))),
        (None, None) => Err(UsageError("missing subcommand; see --help".into()).into()),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let started = now_unix();
    let (cmd, out, argv) = resolve(cli)?;
    let (result, passed) = match &cmd {
        Command::Simulate(a) => commands::simulate_cmd(a)?,
        Command::Stationary(a) => commands::stationary_cmd(a)?,
        Command::Scgf(a) => commands::scgf_cmd(a)?,
        Command::Tq(a) => commands::tq_cmd(a)?,
        Command::Xxz(a) => commands::xxz_cmd(a)?,
        Command::VerifyAll(a) => {
            let rows = verify::verify_rows(a)?;
            eprint!("{}", verify::table(&rows));
            let failures: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.key.as_str()).collect();
            for k in &failures {
                eprintln!("failed row: {k}");
            }
            let ok = failures.is_empty();
            (json!({ "rows": rows, "failures": failures }), ok)
        }
    };
    let manifest = RunManifest::new(&cmd, argv, started, passed);
    let doc = json!({ "manifest": manifest, "result": result });
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(exit::PASS),
        Ok(false) => ExitCode::from(exit::VERIFICATION_FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code_for(&e))
        }
    }
}
