use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "rpm", version, about = "Raise and Peel model: simulation and exact checks")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Replay the arguments recorded in a previous output or manifest file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Run the continuous-time simulation.
    Simulate(SimulateArgs),
    /// Exact rational stationary state.
    Stationary(StationaryArgs),
    /// Largest eigenvalue of the deformed generator.
    Scgf(ScgfArgs),
    /// Exact T-Q and FSZ checks for one N.
    Tq(TqArgs),
    /// XXZ ground energy, TL relations and the bridge to the generator.
    Xxz(XxzArgs),
    /// Full verification matrix.
    VerifyAll(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::Stationary(_) => "stationary",
            Command::Scgf(_) => "scgf",
            Command::Tq(_) => "tq",
            Command::Xxz(_) => "xxz",
            Command::VerifyAll(_) => "verify-all",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Simulate(a) => Some(a.seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long)]
    pub length: usize,
    /// Simulated time horizon.
    #[arg(long, conflicts_with = "events", required_unless_present = "events")]
    pub time: Option<f64>,
    /// Number of events.
    #[arg(long)]
    pub events: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Independent replicas with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    pub replicas: usize,
    /// JSON-lines trajectory log (single replica only).
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Simulated-time interval between log records.
    #[arg(long, requires = "log")]
    pub report_every: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Bareiss,
    Modular,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StationaryArgs {
    #[arg(long)]
    pub length: usize,
    /// Include the integer form of the stationary vector.
    #[arg(long)]
    pub integers: bool,
    /// Include every state with its probability.
    #[arg(long)]
    pub states: bool,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScgfArgs {
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Also report finite-difference derivatives at the origin.
    #[arg(long)]
    pub derivatives: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    #[arg(long)]
    pub spectral_gap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TqCheck {
    All,
    Tq,
    Wronskian,
    Boundary,
    Lambda,
    Hyper,
    Recurrences,
    Bethe,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TqArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = TqCheck::All)]
    pub check: TqCheck,
    /// Largest N for the recurrence check; defaults to max(N, 3).
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct XxzArgs {
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    pub lmax: usize,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
    /// Skip the XXZ rows.
    #[arg(long)]
    pub no_xxz: bool,
    /// Flip the sign of one computed value; the run must then fail.
    #[arg(long, hide = true)]
    pub inject_sign_flip: bool,
}
