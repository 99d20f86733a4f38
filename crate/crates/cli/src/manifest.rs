use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::Command;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Arguments that reproduce this run via `--config`.
    pub argv: Vec<String>,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub passed: bool,
}

pub fn now_unix() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

impl RunManifest {
    pub fn new(cmd: &Command, argv: Vec<String>, started: f64, passed: bool) -> Self {
        Self {
            subcommand: cmd.name().to_string(),
            parameters: serde_json::to_value(cmd).unwrap_or(serde_json::Value::Null),
            seed: cmd.seed(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            argv,
            started_unix: started,
            finished_unix: now_unix(),
            passed,
        }
    }
}

/// Drops `--out` and `--config` with their values.
pub fn replayable_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" || a == "--config" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") || a.starts_with("--config=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

/// Reads `argv` from a manifest, or from the `manifest` field of an output.
pub fn argv_from_config(v: &serde_json::Value) -> Option<Vec<String>> {
    let argv = v.get("argv").or_else(|| v.get("manifest")?.get("argv"))?;
    argv.as_array()?
        .iter()
        .map(|x| x.as_str().map(str::to_string))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_output_flags() {
        let a: Vec<String> = ["--out", "x.json", "tq", "--n", "3", "--config=c.json"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(replayable_argv(&a), vec!["tq", "--n", "3"]);
    }

    #[test]
    fn reads_nested_argv() {
        let v = serde_json::json!({"manifest": {"argv": ["xxz", "--length", "4"]}});
        assert_eq!(argv_from_config(&v).unwrap(), vec!["xxz", "--length", "4"]);
    }
}
